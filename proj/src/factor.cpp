#include "detvar/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace detvar {

namespace {

struct Search {
  std::optional<LinearForm> factor;
  std::vector<Eliminant> eliminants;
};

Eliminant make_eliminant(std::string branch, ExactUniPoly poly, const Tolerance& tol) {
  Eliminant e{std::move(branch), std::move(poly), {}, false};
  try {
    GaussianRoots g = gaussian_rational_roots(e.polynomial, tol);
    e.roots = std::move(g.roots);
    e.complete = g.complete;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NoConvergence) throw;
  }
  return e;
}

/// p evaluated with variable i replaced by the affine form map[i] in one
/// variable, read back as univariate.
ExactUniPoly univariate_slice(const Poly& p, const std::vector<LinearForm>& map) {
  return to_univariate(substitute_affine(p, map), 0);
}

LinearForm form_of(std::size_t nvars, std::vector<ExactComplex> coeffs) {
  coeffs.resize(nvars);
  return LinearForm{std::move(coeffs), ExactComplex{}};
}

Search search_two(const Poly& p, const Tolerance& tol) {
  Search s;
  // x + b y divides p iff p(-b, 1) = 0.
  const std::vector<LinearForm> map{LinearForm{{-1}, 0}, LinearForm{{0}, 1}};
  s.eliminants.push_back(make_eliminant("b in x + b*y", univariate_slice(p, map), tol));
  for (const auto& b : s.eliminants.back().roots) {
    LinearForm f = form_of(2, {1, b});
    if (try_divide(p, f.to_poly())) {
      s.factor = std::move(f);
      return s;
    }
  }
  return s;
}

Search search_three(const Poly& p, const Tolerance& tol) {
  Search s;
  const int d = p.total_degree();

  // Coefficients E_k(b, c) of y^(d-k) z^k in p(-(b y + c z), y, z).
  const Poly b = Poly::variable(4, 0), c = Poly::variable(4, 1), y = Poly::variable(4, 2), z = Poly::variable(4, 3);
  const Poly x = -(b * y + c * z);
  std::vector<Poly> x_powers{Poly::constant(4, 1)};
  for (int k = 1; k <= d; ++k) x_powers.push_back(x_powers.back() * x);
  Poly substituted = Poly::zero(4);
  for (const auto& [e, coeff] : p.terms()) substituted += coeff * x_powers[e[0]] * pow(y, e[1]) * pow(z, e[2]);
  std::vector<Poly> coeffs(static_cast<std::size_t>(d + 1), Poly::zero(2));
  for (const auto& [e, coeff] : substituted.terms()) coeffs[e[3]].add_term(Exponents{e[0], e[1]}, coeff);

  const Poly& e0 = coeffs.front();
  const Poly& ed = coeffs.back();
  ExactUniPoly b_eliminant = to_univariate(e0, 0);
  for (int k = 1; k < d; ++k) {
    const Poly& ek = coeffs[static_cast<std::size_t>(k)];
    if (ek.degree_in(1) <= 0 || ed.degree_in(1) <= 0) continue;
    const Poly res = resultant(ed, ek, 1);
    if (res.is_zero()) continue;
    b_eliminant = gcd(b_eliminant, to_univariate(res, 0));
    break;
  }
  s.eliminants.push_back(make_eliminant("b in x + b*y + c*z", b_eliminant, tol));
  s.eliminants.push_back(make_eliminant("c in x + b*y + c*z", to_univariate(ed, 1), tol));
  for (const auto& b0 : s.eliminants[0].roots) {
    for (const auto& c0 : s.eliminants[1].roots) {
      LinearForm f = form_of(3, {1, b0, c0});
      if (try_divide(p, f.to_poly())) {
        s.factor = std::move(f);
        return s;
      }
    }
  }

  // Forms without x: y + c z divides every coefficient of p in x.
  const std::vector<LinearForm> map{LinearForm{{0}, 0}, LinearForm{{-1}, 0}, LinearForm{{0}, 1}};
  ExactUniPoly common;
  for (const Poly& part : p.coefficients_in(0)) {
    if (!part.is_zero()) common = gcd(common, univariate_slice(part, map));
  }
  s.eliminants.push_back(make_eliminant("c in y + c*z", common, tol));
  for (const auto& c0 : s.eliminants.back().roots) {
    LinearForm f = form_of(3, {0, 1, c0});
    if (try_divide(p, f.to_poly())) {
      s.factor = std::move(f);
      return s;
    }
  }
  return s;
}

/// Relative size of p at q against the coefficient bound.
double relative_value(const ApproxPoly& p, std::span<const ApproxComplex> q, int degree) {
  double scale = 0.0;
  for (const auto& v : q) scale = std::max(scale, std::abs(v));
  const double bound = p.coefficient_norm() * std::pow(scale, degree);
  return bound == 0.0 ? 0.0 : std::abs(p(q)) / bound;
}

bool product_matches(const Poly& p, const std::vector<ApproxLinearForm>& forms, ApproxComplex lead, double eps) {
  const ApproxPoly ap(p);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ApproxComplex> q(p.nvars());
    for (auto& v : q) v = {g(rng), g(rng)};
    ApproxComplex prod = lead;
    for (const auto& f : forms) prod *= f.evaluate(q);
    const ApproxComplex value = ap(q);
    if (std::abs(prod - value) > eps * (std::abs(value) + std::abs(prod) + ap.coefficient_norm())) return false;
  }
  return true;
}

FactorList factor_homogeneous(const Poly& p, const Tolerance& tol) {
  const std::size_t k = p.nvars();
  FactorList out;
  if (p.is_zero()) {
    out.unit = 0;
    out.residual = Poly::constant(k, 1);
    out.residual_certified = true;
    return out;
  }
  Poly current = p;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      const Poly xi = Poly::variable(k, i);
      while (auto q = try_divide(current, xi)) {
        current = std::move(*q);
        out.factors.push_back(LinearForm::variable(k, i));
      }
    }
    if (current.total_degree() <= 0) {
      out.certificate.clear();
      break;
    }
    Search s = k == 2 ? search_two(current, tol) : search_three(current, tol);
    out.certificate = std::move(s.eliminants);
    if (!s.factor) break;
    current = divide_exact(current, s.factor->to_poly());
    out.factors.push_back(std::move(*s.factor));
  }
  out.unit = current.leading_coefficient();
  out.residual = current * out.unit.inverse();
  out.residual_certified = std::all_of(out.certificate.begin(), out.certificate.end(),
                                       [](const Eliminant& e) { return e.complete; });
  if (!out.splits()) {
    if (auto split = approx_linear_split(out.residual, tol)) out.approx_split = std::move(*split);
  }
  return out;
}

}  // namespace

Poly FactorList::product() const {
  Poly acc = Poly(unit) * residual;
  for (const auto& f : factors) acc *= f.to_poly();
  return acc;
}

std::optional<std::vector<ApproxLinearForm>> approx_linear_split(const Poly& p, const Tolerance& tol) {
  const std::size_t k = p.nvars();
  const int d = p.total_degree();
  if (!p.is_homogeneous() || k > 3 || d < 0) throw Error(ErrorCode::UnsupportedShape, "approximate split shape");
  if (k == 0 || d == 0) return std::vector<ApproxLinearForm>{};
  Exponents top(k, 0);
  top[0] = static_cast<unsigned>(d);
  const ExactComplex lead = p.coefficient(top);
  if (lead.is_zero()) return std::nullopt;
  if (k == 1) {
    return std::vector<ApproxLinearForm>(static_cast<std::size_t>(d), ApproxLinearForm{{1.0}, 0.0});
  }
  const double eps = std::sqrt(tol.abs_eps);
  try {
    const std::vector<LinearForm> line_b{LinearForm{{-1}, 0}, LinearForm{{0}, 1}, LinearForm{{0}, 0}};
    std::vector<LinearForm> line_for_b(line_b.begin(), line_b.begin() + static_cast<long>(k));
    const auto b_roots = univariate_roots(to_approx(univariate_slice(p, line_for_b)), tol);
    std::vector<ApproxLinearForm> forms;
    if (k == 2) {
      for (const auto& b : b_roots) forms.push_back(ApproxLinearForm{{1.0, b}, 0.0});
    } else {
      const std::vector<LinearForm> line_c{LinearForm{{-1}, 0}, LinearForm{{0}, 0}, LinearForm{{0}, 1}};
      const auto c_roots = univariate_roots(to_approx(univariate_slice(p, line_c)), tol);
      const ApproxPoly ap(p);
      const std::vector<std::pair<ApproxComplex, ApproxComplex>> probes{{{0.6, 0.3}, {-0.2, 0.9}}, {{-0.7, 0.1}, {0.4, -0.5}}};
      for (const auto& b : b_roots) {
        for (const auto& c : c_roots) {
          bool vanishes = true;
          for (const auto& [y, z] : probes) {
            const std::vector<ApproxComplex> q{-(b * y + c * z), y, z};
            if (relative_value(ap, q, d) > eps) vanishes = false;
          }
          if (!vanishes) continue;
          const bool duplicate = std::any_of(forms.begin(), forms.end(), [&](const ApproxLinearForm& f) {
            return std::abs(f.coefficients[1] - b) + std::abs(f.coefficients[2] - c) < eps;
          });
          if (!duplicate) forms.push_back(ApproxLinearForm{{1.0, b, c}, 0.0});
        }
      }
    }
    if (forms.size() != static_cast<std::size_t>(d)) return std::nullopt;
    if (!product_matches(p, forms, to_approx(lead), eps)) return std::nullopt;
    return forms;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NoConvergence) return std::nullopt;
    throw;
  }
}

FactorList linear_factorization(const Poly& p, const Tolerance& tol) {
  const std::size_t k = p.nvars();
  const int d = p.total_degree();
  if (p.is_homogeneous()) {
    if (k > 3 || d > 6) {
      throw Error(ErrorCode::UnsupportedShape, "homogeneous factorization needs <= 3 variables and degree <= 6");
    }
    return factor_homogeneous(p, tol);
  }
  if (k > 2 || d > 3) {
    throw Error(ErrorCode::UnsupportedShape, "affine factorization needs <= 2 variables and degree <= 3");
  }

  // Homogenize with an extra variable, factor, then set it to 1.
  Poly h = Poly::zero(k + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponents he = e;
    he.push_back(static_cast<unsigned>(d) - std::accumulate(e.begin(), e.end(), 0U));
    h.add_term(he, c);
  }
  const FactorList hf = factor_homogeneous(h, tol);

  FactorList out;
  out.unit = hf.unit;
  out.certificate = hf.certificate;
  out.residual_certified = hf.residual_certified;
  for (const auto& f : hf.factors) {
    std::vector<ExactComplex> coeffs(f.coefficients.begin(), f.coefficients.begin() + static_cast<long>(k));
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const ExactComplex& c) { return c.is_zero(); })) continue;
    out.factors.push_back(LinearForm{std::move(coeffs), f.coefficients[k]});
  }
  std::vector<LinearForm> dehomogenize;
  for (std::size_t i = 0; i < k; ++i) dehomogenize.push_back(LinearForm::variable(k, i));
  dehomogenize.push_back(LinearForm{std::vector<ExactComplex>(k), 1});
  Poly residual = substitute_affine(hf.residual, dehomogenize);
  const ExactComplex lead = residual.leading_coefficient();
  out.unit *= lead;
  out.residual = residual * lead.inverse();
  for (const auto& f : hf.approx_split) {
    std::vector<ApproxComplex> coeffs(f.coefficients.begin(), f.coefficients.begin() + static_cast<long>(k));
    double size = 0.0;
    for (const auto& c : coeffs) size = std::max(size, std::abs(c));
    if (size <= std::sqrt(tol.abs_eps) * std::abs(f.coefficients[k])) continue;
    out.approx_split.push_back(ApproxLinearForm{std::move(coeffs), f.coefficients[k]});
  }
  return out;
}

}  // namespace detvar
