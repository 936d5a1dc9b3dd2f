#include "detvar/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace detvar {

namespace {

double evaluation_scale(const ApproxUniPoly& p, const ApproxComplex& z) {
  double acc = 0.0;
  const double r = std::abs(z);
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

std::pair<ApproxComplex, ApproxComplex> horner_with_derivative(const ApproxUniPoly& p, const ApproxComplex& z) {
  ApproxComplex value = 0.0, slope = 0.0;
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) {
    slope = slope * z + value;
    value = value * z + *it;
  }
  return {value, slope};
}

BigInt lcm_of_denominators(const ExactUniPoly& p) {
  BigInt l = 1;
  for (const auto& c : p.coefficients()) {
    l = boost::multiprecision::lcm(l, denominator(c.re));
    l = boost::multiprecision::lcm(l, denominator(c.im));
  }
  return l;
}

/// 2 d |W_j| as squared radii, or empty when two approximations coincide.
std::optional<std::vector<Rational>> weierstrass_radii_squared(const ExactUniPoly& monic_p,
                                                               const std::vector<ExactComplex>& z) {
  const std::size_t d = z.size();
  std::vector<Rational> out(d);
  const Rational factor = Rational(4 * d * d);
  for (std::size_t j = 0; j < d; ++j) {
    ExactComplex denom = 1;
    for (std::size_t k = 0; k < d; ++k) {
      if (k == j) continue;
      const ExactComplex diff = z[j] - z[k];
      if (diff.is_zero()) return std::nullopt;
      denom *= diff;
    }
    out[j] = factor * monic_p(z[j]).norm() / denom.norm();
  }
  return out;
}

bool isolated(const std::vector<ExactComplex>& z, const std::vector<Rational>& radii_sq, const Rational& lattice_scale) {
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (lattice_scale * lattice_scale * radii_sq[j] >= 1) return false;
    for (std::size_t k = j + 1; k < z.size(); ++k) {
      const Rational widest = std::max(radii_sq[j], radii_sq[k]);
      if (4 * widest >= (z[j] - z[k]).norm()) return false;
    }
  }
  return true;
}

void collect_lattice_roots(const ExactUniPoly& p, const ExactComplex& z, const BigInt& scale,
                           std::vector<ExactComplex>& found) {
  const Rational l(scale);
  const BigInt cre = round_to_integer(z.re * l);
  const BigInt cim = round_to_integer(z.im * l);
  for (int dr = -1; dr <= 1; ++dr) {
    for (int di = -1; di <= 1; ++di) {
      const ExactComplex candidate{Rational(BigInt(cre + dr), scale), Rational(BigInt(cim + di), scale)};
      if (std::find(found.begin(), found.end(), candidate) != found.end()) continue;
      if (p(candidate).is_zero()) found.push_back(candidate);
    }
  }
}

}  // namespace

ExactUniPoly restrict_to_line(const Poly& p, std::span<const ExactComplex> base, std::span<const ExactComplex> dir) {
  if (base.size() != dir.size()) throw Error(ErrorCode::ArityMismatch, "line base and direction differ in length");
  if (std::all_of(dir.begin(), dir.end(), [](const ExactComplex& c) { return c.is_zero(); })) {
    throw Error(ErrorCode::ZeroDirection, "line direction is zero");
  }
  if (p.nvars() != 0 && p.nvars() != base.size()) throw Error(ErrorCode::ArityMismatch, "line arity");
  std::vector<LinearForm> map;
  map.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) map.push_back(LinearForm{{dir[i]}, base[i]});
  return to_univariate(substitute_affine(p, map), 0);
}

ExactUniPoly to_univariate(const Poly& p, std::size_t var) {
  if (p.is_zero()) return {};
  std::vector<ExactComplex> c(static_cast<std::size_t>(std::max(p.degree_in(var), 0) + 1));
  for (const auto& [e, coeff] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != var && e[i] != 0) throw Error(ErrorCode::ArityMismatch, "polynomial is not univariate");
    }
    c[var < e.size() ? e[var] : 0] = coeff;
  }
  return ExactUniPoly(std::move(c));
}

std::vector<ApproxComplex> univariate_roots(const ApproxUniPoly& p, const Tolerance& tol) {
  const int d = p.degree();
  if (d < 1) throw Error(ErrorCode::BadParams, "root finding needs degree >= 1");
  double max_coeff = 0.0;
  for (const auto& c : p.coefficients()) max_coeff = std::max(max_coeff, std::abs(c));
  if (std::abs(p.leading()) <= tol.eig_cutoff * max_coeff) {
    throw Error(ErrorCode::DegenerateLeadingCoefficient, "leading coefficient is negligible");
  }

  // Fujiwara's bound on root moduli seeds the starting circle.
  double bound = 0.0;
  const ApproxComplex lead = p.leading();
  for (int k = 0; k < d; ++k) {
    const double ratio = std::abs(p[static_cast<std::size_t>(k)] / lead);
    if (ratio == 0.0) continue;
    const double term = std::pow(k == 0 ? ratio / 2.0 : ratio, 1.0 / (d - k));
    bound = std::max(bound, 2.0 * term);
  }
  const double radius = bound > 0.0 ? bound / 2.0 : 1.0;
  std::vector<ApproxComplex> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / d + 0.4);

  constexpr int kMaxIterations = 200;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::vector<bool> done(z.size(), false);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const auto [value, slope] = horner_with_derivative(p, z[i]);
      if (std::abs(value) <= 4.0 * kEps * evaluation_scale(p, z[i])) {
        done[i] = true;
        continue;
      }
      all_done = false;
      ApproxComplex repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      ApproxComplex step;
      if (slope == ApproxComplex{}) {
        step = std::polar(kEps * (1.0 + std::abs(z[i])), 1.0 + static_cast<double>(i));
      } else {
        const ApproxComplex ratio = value / slope;
        step = ratio / (1.0 - ratio * repulsion);
      }
      z[i] -= step;
      if (std::abs(step) <= kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) break;
  }

  for (const auto& root : z) {
    if (!std::isfinite(root.real()) || !std::isfinite(root.imag()) ||
        std::abs(p(root)) > tol.abs_eps * evaluation_scale(p, root)) {
      throw Error(ErrorCode::NoConvergence, "Aberth iteration did not converge in 200 iterations");
    }
  }
  return z;
}

std::vector<ExactComplex> refine_roots(const ExactUniPoly& p, std::span<const ApproxComplex> roots, unsigned bits) {
  const ExactUniPoly dp = p.derivative();
  std::vector<ExactComplex> out;
  out.reserve(roots.size());
  for (const auto& root : roots) {
    ExactComplex z = round_dyadic(exact_from(root), bits);
    for (int iter = 0; iter < 64; ++iter) {
      const ExactComplex value = p(z);
      const ExactComplex slope = dp(z);
      if (value.is_zero() || slope.is_zero()) break;
      ExactComplex next = round_dyadic(z - value / slope, bits);
      if (next == z) break;
      z = std::move(next);
    }
    out.push_back(std::move(z));
  }
  return out;
}

GaussianRoots gaussian_rational_roots(const ExactUniPoly& p, const Tolerance& tol) {
  GaussianRoots result;
  if (p.degree() < 1) {
    result.complete = true;
    return result;
  }
  const ExactUniPoly q = squarefree_part(p);
  if (q.degree() == 1) {
    result.roots.push_back(-q[0]);
    result.complete = true;
    return result;
  }
  const BigInt scale = lcm_of_denominators(q);
  const std::vector<ApproxComplex> approx = univariate_roots(to_approx(q), tol);

  std::vector<ExactComplex> z;
  for (unsigned bits = 128; bits <= 2048; bits *= 2) {
    z = refine_roots(q, approx, bits);
    result.precision_bits = bits;
    const auto radii = weierstrass_radii_squared(q, z);
    if (radii && isolated(z, *radii, Rational(scale))) {
      result.complete = true;
      break;
    }
  }
  for (const auto& zj : z) collect_lattice_roots(q, zj, scale, result.roots);
  return result;
}

}  // namespace detvar
