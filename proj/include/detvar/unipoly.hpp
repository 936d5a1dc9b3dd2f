#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "detvar/error.hpp"
#include "detvar/scalars.hpp"

namespace detvar {

namespace detail {
inline bool scalar_is_zero(const ExactComplex& z) { return z.is_zero(); }
inline bool scalar_is_zero(const ApproxComplex& z) { return z == ApproxComplex{}; }
}  // namespace detail

/// Dense univariate polynomial, coefficients in ascending powers. Trailing
/// zeros are trimmed so the zero polynomial has no coefficients.
template <class Scalar>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) { trim(); }

  static UniPoly monomial(std::size_t power, const Scalar& coefficient) {
    std::vector<Scalar> c(power + 1, Scalar(0));
    c[power] = coefficient;
    return UniPoly(std::move(c));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const { return c_; }
  const Scalar& operator[](std::size_t k) const { return c_[k]; }
  const Scalar& leading() const { return c_.back(); }

  Scalar operator()(const Scalar& z) const {
    Scalar acc = Scalar(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Scalar(static_cast<int>(k));
    return UniPoly(std::move(d));
  }

  UniPoly& operator+=(const UniPoly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Scalar(0));
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator*=(const Scalar& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Scalar& s) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(out));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && detail::scalar_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using ExactUniPoly = UniPoly<ExactComplex>;
using ApproxUniPoly = UniPoly<ApproxComplex>;

/// Quotient and remainder. Throws DivisionByZero.
std::pair<ExactUniPoly, ExactUniPoly> divmod(const ExactUniPoly& a, const ExactUniPoly& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
ExactUniPoly gcd(ExactUniPoly a, ExactUniPoly b);

ExactUniPoly monic(const ExactUniPoly& p);

/// p / gcd(p, p'), monic.
ExactUniPoly squarefree_part(const ExactUniPoly& p);

ApproxUniPoly to_approx(const ExactUniPoly& p);

std::string to_string(const ExactUniPoly& p, const std::string& name = "s");

}  // namespace detvar
