#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detvar/linalg.hpp"
#include "detvar/scalars.hpp"

namespace detvar {

using Exponents = std::vector<unsigned>;

/// Graded lexicographic order, largest first: higher total degree wins, ties
/// are broken lexicographically with r1 > r2 > ... .
struct GrlexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over Q(i).
///
/// A default-constructed or scalar-constructed Poly has no fixed arity
/// (nvars() == 0) and adopts the arity of the other operand in arithmetic.
/// Zero coefficients are never stored, so equality is structural.
class Poly {
 public:
  using TermMap = std::map<Exponents, ExactComplex, GrlexDescending>;

  Poly() = default;
  Poly(const ExactComplex& c);  // NOLINT: scalars embed as constants

  static Poly zero(std::size_t nvars);
  static Poly constant(std::size_t nvars, const ExactComplex& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(Exponents exponents, const ExactComplex& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;

  ExactComplex coefficient(const Exponents& e) const;
  /// Leading term in descending grlex order. Precondition: nonzero.
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const ExactComplex& leading_coefficient() const { return terms_.begin()->second; }

  void add_term(const Exponents& e, const ExactComplex& c);

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const ExactComplex& c);

  ExactComplex evaluate(std::span<const ExactComplex> point) const;
  ApproxComplex evaluate(std::span<const ApproxComplex> point) const;

  Poly derivative(std::size_t var) const;

  /// Same polynomial viewed with `nvars` variables. Only arity-free constants
  /// may change arity; anything else throws ArityMismatch.
  Poly promoted(std::size_t nvars) const;

  /// Renames variables: variable i becomes target[i] in a ring of
  /// `new_nvars` variables; target[i] < 0 drops a variable that must not occur.
  Poly remap(std::size_t new_nvars, std::span<const int> target) const;

  /// Coefficients of successive powers of `var` (ascending); each keeps the
  /// full arity with the exponent of `var` set to zero.
  std::vector<Poly> coefficients_in(std::size_t var) const;

  /// Canonical rendering: terms in descending grlex joined by " + ", each as
  /// "coeff*r1^a*r2^b". Default names are r1..rk.
  std::string to_string(std::span<const std::string> names = {}) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const ExactComplex& c, Poly p);
Poly operator*(Poly p, const ExactComplex& c);
Poly operator-(const Poly& p);
Poly pow(const Poly& p, unsigned exponent);

/// Multivariate division by a single divisor; empty when q does not divide p.
std::optional<Poly> try_divide(const Poly& p, const Poly& q);
/// Exact quotient. A nonzero remainder is an internal contradiction.
Poly divide_exact(const Poly& p, const Poly& q);

template <>
struct RingTraits<Poly> {
  static bool is_zero(const Poly& a) { return a.is_zero(); }
  static Poly exact_div(const Poly& a, const Poly& b) { return divide_exact(a, b); }
  static std::size_t cost(const Poly& a) { return a.term_count(); }
  static Poly zero_like(const Poly& a) { return Poly::zero(a.nvars()); }
  static Poly one_like(const Poly& a) { return Poly::constant(a.nvars(), 1); }
};

using PolyMatrix = Matrix<Poly>;

/// Affine form sum_i c_i x_i + constant.
struct LinearForm {
  std::vector<ExactComplex> coefficients;
  ExactComplex constant;

  static LinearForm variable(std::size_t nvars, std::size_t index);
  /// Throws UnsupportedShape when p has degree > 1.
  static LinearForm from_poly(const Poly& p);

  std::size_t nvars() const { return coefficients.size(); }
  bool is_homogeneous() const { return constant.is_zero(); }
  bool is_zero() const;
  Poly to_poly() const;
  ExactComplex evaluate(std::span<const ExactComplex> point) const;
  /// Scaled so the first nonzero coefficient is 1.
  LinearForm normalized() const;
  std::string to_string(std::span<const std::string> names = {}) const;

  friend bool operator==(const LinearForm& a, const LinearForm& b) = default;
};

struct ApproxLinearForm {
  std::vector<ApproxComplex> coefficients;
  ApproxComplex constant{};

  ApproxComplex evaluate(std::span<const ApproxComplex> point) const;
  /// Scaled so the largest coefficient is 1 (ties to lowest index).
  ApproxLinearForm normalized() const;
};

/// Floating evaluator compiled from an exact polynomial.
class ApproxPoly {
 public:
  ApproxPoly() = default;
  explicit ApproxPoly(const Poly& p);

  std::size_t nvars() const { return nvars_; }
  ApproxComplex operator()(std::span<const ApproxComplex> point) const;
  std::vector<ApproxComplex> gradient(std::span<const ApproxComplex> point) const;
  /// Sum of coefficient moduli; bounds |p| on the closed unit polydisc.
  double coefficient_norm() const { return norm1_; }

 private:
  struct Term {
    Exponents exponents;
    ApproxComplex coefficient;
  };
  std::size_t nvars_ = 0;
  unsigned max_degree_ = 0;
  std::vector<Term> terms_;
  double norm1_ = 0.0;
};

/// Composition p(map_1(y), ..., map_k(y)); every form must share one arity.
Poly substitute_affine(const Poly& p, std::span<const LinearForm> map);

std::vector<ApproxComplex> gradient(const Poly& p, std::span<const ApproxComplex> at);

/// Cofactor expansion up to 4x4, fraction-free elimination above.
Poly symbolic_det(const PolyMatrix& m);

/// All k x k minors, row subsets outer and column subsets inner, each in
/// lexicographic order. Throws BadOrder when k exceeds min(rows, cols).
std::vector<Poly> minors(const PolyMatrix& m, std::size_t k);

/// Sylvester resultant eliminating `var`; the result does not involve `var`
/// but keeps the arity of the inputs.
Poly resultant(const Poly& p, const Poly& q, std::size_t var);

}  // namespace detvar

namespace Eigen {

template <>
struct NumTraits<detvar::Poly> : GenericNumTraits<detvar::Poly> {
  using Real = detvar::Poly;
  using NonInteger = detvar::Poly;
  using Nested = detvar::Poly;
  using Literal = detvar::Poly;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 64,
    MulCost = 256
  };
};

}  // namespace Eigen
