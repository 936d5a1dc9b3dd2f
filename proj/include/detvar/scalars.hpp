#pragma once

#include <complex>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>

#include "detvar/error.hpp"

namespace detvar {

// Expression templates are disabled so that `auto` and implicit conversions
// behave like ordinary value types.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using ApproxComplex = std::complex<double>;

/// Gaussian rational a + b i. GMP keeps both parts reduced with a positive
/// denominator, so equality is structural.
struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() = default;
  ExactComplex(Rational real_part) : re(std::move(real_part)) {}  // NOLINT: implicit by design of a scalar
  ExactComplex(Rational real_part, Rational imag_part)
      : re(std::move(real_part)), im(std::move(imag_part)) {}
  template <std::integral I>
  ExactComplex(I value) : re(value) {}  // NOLINT
  template <std::integral I, std::integral J>
  ExactComplex(I real_part, J imag_part) : re(real_part), im(imag_part) {}

  static ExactComplex i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re; }
  const Rational& imag() const { return im; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  bool is_one() const { return im.is_zero() && re == 1; }

  /// |z|^2
  Rational norm() const { return re * re + im * im; }
  ExactComplex conj() const { return {re, -im}; }
  ExactComplex inverse() const;

  ExactComplex& operator+=(const ExactComplex& rhs);
  ExactComplex& operator-=(const ExactComplex& rhs);
  ExactComplex& operator*=(const ExactComplex& rhs);
  ExactComplex& operator/=(const ExactComplex& rhs);

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

ExactComplex operator+(ExactComplex a, const ExactComplex& b);
ExactComplex operator-(ExactComplex a, const ExactComplex& b);
ExactComplex operator*(const ExactComplex& a, const ExactComplex& b);
ExactComplex operator/(const ExactComplex& a, const ExactComplex& b);
ExactComplex operator-(const ExactComplex& a);

// ADL hooks used by Eigen's numext for complex scalars.
inline ExactComplex conj(const ExactComplex& z) { return z.conj(); }
inline Rational real(const ExactComplex& z) { return z.re; }
inline Rational imag(const ExactComplex& z) { return z.im; }
inline Rational abs2(const ExactComplex& z) { return z.norm(); }

std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

// ---------------------------------------------------------------------------
// conversions

double to_double(const Rational& x);
long double to_long_double(const Rational& x);
ApproxComplex to_approx(const ExactComplex& z);

/// Every finite binary64 value is a dyadic rational; this conversion is exact.
Rational exact_from(double x);
ExactComplex exact_from(const ApproxComplex& z);

/// Nearest multiple of 2^-bits (ties away from zero).
Rational round_dyadic(const Rational& x, unsigned bits);
ExactComplex round_dyadic(const ExactComplex& z, unsigned bits);

/// Nearest integer (ties away from zero).
BigInt round_to_integer(const Rational& x);

/// Parses "p", "-p", "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);
/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& x);
/// Real values render as rationals, otherwise "(a+b*i)".
std::string to_string(const ExactComplex& z);

// ---------------------------------------------------------------------------
// tolerance policy

/// The single tolerance knob shared by every floating comparison downstream.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;
  double eig_cutoff = 1e-10;

  /// Throws BadParams unless every field is strictly positive and finite.
  void validate() const;
};

/// |a-b| <= abs_eps + rel_eps * max(|a|,|b|)
bool approx_close(const ApproxComplex& a, const ApproxComplex& b, const Tolerance& tol = {});

}  // namespace detvar

namespace Eigen {

template <>
struct NumTraits<detvar::ExactComplex> : GenericNumTraits<detvar::ExactComplex> {
  using Real = detvar::Rational;
  using NonInteger = detvar::ExactComplex;
  using Nested = detvar::ExactComplex;
  using Literal = detvar::ExactComplex;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
