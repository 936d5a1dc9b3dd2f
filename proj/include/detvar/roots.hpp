#pragma once

#include <span>
#include <vector>

#include "detvar/multipoly.hpp"
#include "detvar/unipoly.hpp"

namespace detvar {

/// Coefficients of s -> p(base + s * dir). Throws ZeroDirection.
ExactUniPoly restrict_to_line(const Poly& p, std::span<const ExactComplex> base, std::span<const ExactComplex> dir);

/// Reads a polynomial that involves at most variable `var` as univariate.
/// Throws ArityMismatch when another variable occurs.
ExactUniPoly to_univariate(const Poly& p, std::size_t var);

/// All complex roots by Aberth-Ehrlich simultaneous iteration (200 iterations
/// at most). Each root satisfies |p(z)| <= abs_eps * sum_k |c_k| |z|^k.
/// Throws DegenerateLeadingCoefficient, BadParams (degree < 1), NoConvergence.
std::vector<ApproxComplex> univariate_roots(const ApproxUniPoly& p, const Tolerance& tol = {});

/// Exact roots in Q(i) of p, each listed once.
struct GaussianRoots {
  std::vector<ExactComplex> roots;
  /// Every approximate root was isolated in a disc narrow enough that no
  /// Gaussian-rational root can have been missed.
  bool complete = false;
  unsigned precision_bits = 0;
};

/// Candidate Gaussian-rational roots are read off refined floating roots and
/// confirmed by exact evaluation; completeness is certified by disjoint
/// Weierstrass inclusion discs.
GaussianRoots gaussian_rational_roots(const ExactUniPoly& p, const Tolerance& tol = {});

/// Newton refinement of simple roots in exact dyadic arithmetic rounded to
/// 2^-bits after each step.
std::vector<ExactComplex> refine_roots(const ExactUniPoly& p, std::span<const ApproxComplex> roots, unsigned bits);

}  // namespace detvar
