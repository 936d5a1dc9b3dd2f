#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detvar/multipoly.hpp"
#include "detvar/roots.hpp"

namespace detvar {

/// Univariate polynomial whose roots contain every admissible coefficient of
/// a linear factor in one branch of the search, with its Gaussian-rational
/// roots.
struct Eliminant {
  std::string branch;
  ExactUniPoly polynomial;
  std::vector<ExactComplex> roots;
  bool complete = false;
};

struct FactorList {
  ExactComplex unit;
  std::vector<LinearForm> factors;
  /// Leading coefficient 1 (grlex), or the constant 1 when p splits.
  Poly residual;
  /// Eliminants of the final search round. When all are complete, residual
  /// has no Gaussian-rational linear factor.
  std::vector<Eliminant> certificate;
  bool residual_certified = false;
  /// Floating factors of the residual when it splits over C.
  std::vector<ApproxLinearForm> approx_split;

  bool splits() const { return residual.is_constant(); }
  /// unit * prod(factors) * residual
  Poly product() const;
};

/// Extracts every Gaussian-rational linear factor of p exactly.
///
/// Supported shapes: homogeneous in at most 3 variables of degree at most 6,
/// or affine in at most 2 variables of degree at most 3. Otherwise throws
/// UnsupportedShape.
FactorList linear_factorization(const Poly& p, const Tolerance& tol = {});

/// Floating linear factors of a homogeneous polynomial in at most 3
/// variables whose x^d coefficient is nonzero; empty unless the product of
/// the returned forms reproduces p within tolerance.
std::optional<std::vector<ApproxLinearForm>> approx_linear_split(const Poly& p, const Tolerance& tol = {});

}  // namespace detvar
