#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/SVD>

#include "detvar/roots.hpp"

namespace detvar::detail {

namespace {

ExactComplex gaussian_integer(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  const int re = d(rng);
  return ExactComplex(re, d(rng));
}

std::vector<ExactComplex> random_point(std::mt19937_64& rng, std::size_t m, int bound) {
  std::vector<ExactComplex> p(m);
  do {
    for (auto& c : p) c = gaussian_integer(rng, bound);
  } while (std::all_of(p.begin(), p.end(), [](const ExactComplex& c) { return c.is_zero(); }));
  return p;
}

std::vector<ApproxComplex> along(std::span<const ExactComplex> base, std::span<const ExactComplex> dir, ApproxComplex s) {
  std::vector<ApproxComplex> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = to_approx(base[i]) + s * to_approx(dir[i]);
  return out;
}

ExactUniPoly line_gcd(std::span<const Poly> equations, std::span<const ExactComplex> base,
                      std::span<const ExactComplex> dir) {
  ExactUniPoly g;
  for (const auto& eq : equations) {
    g = gcd(g, restrict_to_line(eq, base, dir));
    if (g.degree() == 0) break;
  }
  return g;
}

std::vector<std::vector<ApproxComplex>> line_candidates(std::mt19937_64& rng, std::span<const Poly> equations,
                                                        std::size_t m, const Tolerance& tol) {
  const auto base = random_point(rng, m, 5);
  const auto dir = random_point(rng, m, 5);
  const ExactUniPoly g = line_gcd(equations, base, dir);
  std::vector<std::vector<ApproxComplex>> out;
  if (g.degree() < 1) return out;
  for (const auto& s : univariate_roots(to_approx(squarefree_part(g)), tol)) out.push_back(along(base, dir, s));
  return out;
}

/// Scaled residual vector of the equations at p.
ApproxVector scaled_values(std::span<const ApproxPoly> eqs, std::span<const ApproxComplex> p) {
  ApproxVector f(static_cast<Eigen::Index>(eqs.size()));
  for (std::size_t i = 0; i < eqs.size(); ++i) f(static_cast<Eigen::Index>(i)) = eqs[i](p) / eqs[i].coefficient_norm();
  return f;
}

std::vector<std::vector<ApproxComplex>> plane_candidates(std::mt19937_64& rng, std::span<const Poly> equations,
                                                         std::span<const ApproxPoly> eqs, std::size_t m,
                                                         const Tolerance& tol) {
  std::vector<std::vector<ExactComplex>> b;
  for (int k = 0; k < 3; ++k) b.push_back(random_point(rng, m, 5));
  std::vector<LinearForm> map;
  for (std::size_t i = 0; i < m; ++i) map.push_back(LinearForm{{b[0][i], b[1][i]}, b[2][i]});

  std::vector<Poly> restricted;
  for (const auto& eq : equations) restricted.push_back(substitute_affine(eq, map));
  Poly g1 = Poly::zero(2), g2 = Poly::zero(2);
  for (const auto& r : restricted) {
    g1 += r * gaussian_integer(rng, 3);
    g2 += r * gaussian_integer(rng, 3);
  }
  std::vector<std::vector<ApproxComplex>> out;
  if (g1.is_zero() || g2.is_zero()) return out;
  const ExactUniPoly res = to_univariate(resultant(g1, g2, 1), 0);
  if (res.degree() < 1) return out;

  const auto in_y = g1.coefficients_in(1);
  for (const auto& x0 : univariate_roots(to_approx(squarefree_part(res)), tol)) {
    std::vector<ApproxComplex> cy;
    const std::vector<ApproxComplex> at{x0, 0.0};
    for (const auto& c : in_y) cy.push_back(c.evaluate(at));
    const ApproxUniPoly py(std::move(cy));
    if (py.degree() < 1) continue;
    std::vector<ApproxComplex> ys;
    try {
      ys = univariate_roots(py, tol);
    } catch (const Error&) {
      continue;
    }
    std::vector<ApproxComplex> best;
    double best_res = INFINITY;
    for (const auto& y0 : ys) {
      std::vector<ApproxComplex> p(m);
      for (std::size_t i = 0; i < m; ++i) p[i] = x0 * to_approx(b[0][i]) + y0 * to_approx(b[1][i]) + to_approx(b[2][i]);
      const double r = scaled_values(eqs, normalize_projective(p)).norm();
      if (r < best_res) {
        best_res = r;
        best = std::move(p);
      }
    }
    if (!best.empty()) out.push_back(std::move(best));
  }
  return out;
}

/// Damped Gauss-Newton in the affine chart of the largest coordinate.
std::vector<ApproxComplex> polish(std::span<const ApproxPoly> eqs, std::span<const ApproxComplex> start) {
  std::vector<ApproxComplex> p = normalize_projective(start);
  const std::size_t m = p.size();
  const std::size_t pivot = static_cast<std::size_t>(
      std::find(p.begin(), p.end(), ApproxComplex(1.0, 0.0)) - p.begin());
  double res = scaled_values(eqs, p).norm();
  for (int step = 0; step < 50 && res > 0.0; ++step) {
    const ApproxVector f = scaled_values(eqs, p);
    ApproxMatrix j(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(m - 1));
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      const auto g = eqs[i].gradient(p);
      Eigen::Index col = 0;
      for (std::size_t k = 0; k < m; ++k)
        if (k != pivot) j(static_cast<Eigen::Index>(i), col++) = g[k] / eqs[i].coefficient_norm();
    }
    const ApproxVector delta = j.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-f);
    if (!delta.allFinite()) break;
    bool accepted = false;
    double lambda = 1.0;
    for (int tries = 0; tries < 10 && !accepted; ++tries, lambda /= 2) {
      std::vector<ApproxComplex> q = p;
      Eigen::Index col = 0;
      for (std::size_t k = 0; k < m; ++k)
        if (k != pivot) q[k] += lambda * delta(col++);
      const double r = scaled_values(eqs, q).norm();
      if (r < res) {
        p = std::move(q);
        res = r;
        accepted = true;
      }
    }
    if (!accepted || lambda * delta.norm() <= 1e-16) break;
  }
  return normalize_projective(p);
}

std::optional<Rational> small_rational(double x) {
  for (long q = 1; q <= 64; ++q) {
    const double num = std::round(x * static_cast<double>(q));
    if (std::abs(x * static_cast<double>(q) - num) <= 1e-7 * static_cast<double>(q)) {
      return Rational(static_cast<long>(num), q);
    }
  }
  return std::nullopt;
}

std::optional<LinearForm> rationalize(const ApproxLinearForm& f) {
  LinearForm out;
  for (const auto& c : f.normalized().coefficients) {
    const auto re = small_rational(c.real());
    const auto im = small_rational(c.imag());
    if (!re || !im) return std::nullopt;
    out.coefficients.emplace_back(*re, *im);
  }
  return out;
}

}  // namespace

LinearSplit split_common_hyperplanes(std::span<const Poly> generators, std::size_t m, std::uint64_t seed,
                                     const Tolerance& tol) {
  LinearSplit out;
  for (const auto& g : generators)
    if (!g.is_zero()) out.residual.push_back(g);
  std::mt19937_64 rng(seed);
  while (!out.residual.empty() && out.residual.front().total_degree() > 0) {
    const auto base = random_point(rng, m, 5);
    const auto dir = random_point(rng, m, 5);
    const ExactUniPoly g = line_gcd(out.residual, base, dir);
    if (g.degree() < 1) break;
    std::vector<ApproxPoly> eqs;
    for (const auto& r : out.residual) eqs.emplace_back(r);
    bool found = false;
    for (const auto& s : univariate_roots(to_approx(squarefree_part(g)), tol)) {
      const auto p = along(base, dir, s);
      std::vector<ApproxComplex> best;
      double best_norm = 0.0;
      for (const auto& e : eqs) {
        const auto grad = e.gradient(p);
        double nrm = 0.0;
        for (const auto& c : grad) nrm += std::norm(c);
        nrm = std::sqrt(nrm) / e.coefficient_norm();
        if (nrm > best_norm) {
          best_norm = nrm;
          best = grad;
        }
      }
      if (best.empty()) continue;
      const auto form = rationalize(ApproxLinearForm{best, 0.0});
      if (!form || form->is_zero()) continue;
      const Poly l = form->to_poly().promoted(m);
      std::vector<Poly> divided;
      for (const auto& r : out.residual) {
        auto q = try_divide(r, l);
        if (!q) break;
        divided.push_back(std::move(*q));
      }
      if (divided.size() != out.residual.size()) continue;
      out.forms.push_back(form->normalized());
      out.residual = std::move(divided);
      found = true;
      break;
    }
    if (!found) {
      out.nonlinear_common_factor = true;
      break;
    }
  }
  return out;
}

std::vector<Poly> nonzero_generators(const Variety& v) {
  std::vector<Poly> out;
  for (const auto& g : v.generators)
    if (!g.is_zero()) out.push_back(g);
  return out;
}

std::vector<SamplePoint> sample_system(const Variety& v, std::span<const Poly> equations, std::size_t codim,
                                       std::size_t count, std::uint64_t seed, const Tolerance& tol) {
  if (codim < 1 || codim > 2) throw Error(ErrorCode::BadParams, "sampling supports codimension 1 or 2");
  std::vector<ApproxPoly> eqs;
  for (const auto& eq : equations) eqs.emplace_back(eq);
  std::mt19937_64 rng(seed);
  std::vector<SamplePoint> out;
  for (std::size_t draw = 0; draw < 100 * count && out.size() < count; ++draw) {
    std::vector<std::vector<ApproxComplex>> candidates;
    try {
      candidates = codim == 1 ? line_candidates(rng, equations, v.m, tol)
                              : plane_candidates(rng, equations, eqs, v.m, tol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::DegenerateLeadingCoefficient) continue;
      throw;
    }
    for (const auto& c : candidates) {
      if (out.size() == count) break;
      const auto p = polish(eqs, c);
      const auto mem = membership(v, p, tol);
      if (mem.member) out.push_back({p, mem.hermitian_residual, codim});
    }
  }
  return out;
}

std::size_t detect_codim(const Variety& v, std::uint64_t seed, const Tolerance& tol) {
  const auto gens = nonzero_generators(v);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 3; ++k) {
    const auto base = random_point(rng, v.m, 5);
    const auto dir = random_point(rng, v.m, 5);
    if (line_gcd(gens, base, dir).degree() >= 1) return 1;
  }
  if (v.m >= 3 && !sample_system(v, gens, 2, 1, seed, tol).empty()) return 2;
  return 0;
}

std::vector<SamplePoint> sample_variety(const Variety& v, std::size_t count, std::uint64_t seed,
                                       const Tolerance& tol) {
  if (count == 0 || v.full()) return {};
  if (const auto g = essential_generator(v)) {
    const std::vector<Poly> eq{*g};
    return sample_system(v, eq, 1, count, seed, tol);
  }
  const std::size_t codim = detect_codim(v, seed, tol);
  if (codim == 0) return {};
  const auto gens = nonzero_generators(v);
  return sample_system(v, gens, codim, count, seed, tol);
}

}  // namespace detvar::detail

namespace detvar {

std::vector<SamplePoint> sample_points(const Variety& v, std::size_t count, std::uint64_t seed, const Tolerance& tol) {
  if (v.full()) throw Error(ErrorCode::BadParams, "cannot sample a variety equal to projective space");
  auto out = detail::sample_variety(v, count, seed, tol);
  if (out.size() < count) {
    throw Error(ErrorCode::SamplingExhausted,
                "found " + std::to_string(out.size()) + " of " + std::to_string(count) + " points");
  }
  return out;
}

}  // namespace detvar
