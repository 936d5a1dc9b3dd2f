#include "detvar/scalars.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace detvar {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

ExactComplex ExactComplex::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const Rational n = norm();
  return {re / n, -im / n};
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& rhs) {
  if (im.is_zero() && rhs.im.is_zero()) {
    re *= rhs.re;
    return *this;
  }
  Rational r = re * rhs.re - im * rhs.im;
  im = re * rhs.im + im * rhs.re;
  re = std::move(r);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "exact complex division by zero");
  if (rhs.im.is_zero()) {
    re /= rhs.re;
    im /= rhs.re;
    return *this;
  }
  return *this *= rhs.inverse();
}

ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  ExactComplex r = a;
  return r *= b;
}
ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
  ExactComplex r = a;
  return r /= b;
}
ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << to_string(z); }

double to_double(const Rational& x) { return static_cast<double>(to_long_double(x)); }

long double to_long_double(const Rational& x) {
  BigInt num = numerator(x);
  const BigInt den = denominator(x);
  if (num.is_zero()) return 0.0L;
  const bool negative = num < 0;
  if (negative) num = -num;
  const long exponent = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
  const long shift = 62 - exponent;
  BigInt q = shift >= 0 ? BigInt(num << static_cast<unsigned>(shift)) / den
                        : num / BigInt(den << static_cast<unsigned>(-shift));
  const auto mantissa = q.convert_to<unsigned long long>();
  const long double value = std::ldexp(static_cast<long double>(mantissa), static_cast<int>(-shift));
  return negative ? -value : value;
}

ApproxComplex to_approx(const ExactComplex& z) { return {to_double(z.re), to_double(z.im)}; }

Rational exact_from(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::BadParams, "non-finite value has no exact form");
  return Rational(x);
}

ExactComplex exact_from(const ApproxComplex& z) { return {exact_from(z.real()), exact_from(z.imag())}; }

BigInt round_to_integer(const Rational& x) {
  BigInt num = numerator(x);
  const BigInt den = denominator(x);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt q = (2 * num + den) / (2 * den);
  return negative ? BigInt(-q) : q;
}

Rational round_dyadic(const Rational& x, unsigned bits) {
  const BigInt scale = BigInt(1) << bits;
  return Rational(round_to_integer(x * Rational(scale)), scale);
}

ExactComplex round_dyadic(const ExactComplex& z, unsigned bits) {
  return {round_dyadic(z.re, bits), round_dyadic(z.im, bits)};
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const std::string_view num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text)) {
    throw Error(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
  }
  BigInt num = parse_integer(num_text);
  if (slash == std::string_view::npos) return Rational(num);
  const std::string_view den_text = text.substr(slash + 1);
  if (!is_integer_literal(den_text)) {
    throw Error(ErrorCode::ParseError, "malformed rational literal '" + std::string(text) + "'");
  }
  BigInt den = parse_integer(den_text);
  if (den.is_zero()) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& x) {
  const BigInt den = denominator(x);
  if (den == 1) return numerator(x).str();
  return numerator(x).str() + "/" + den.str();
}

std::string to_string(const ExactComplex& z) {
  if (z.im.is_zero()) return to_string(z.re);
  if (z.re.is_zero()) return to_string(z.im) + "*i";
  std::string s = "(" + to_string(z.re);
  if (z.im > 0) s += "+";
  return s + to_string(z.im) + "*i)";
}

void Tolerance::validate() const {
  const auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(abs_eps) || !ok(rel_eps) || !ok(eig_cutoff)) {
    throw Error(ErrorCode::BadParams, "tolerances must be finite and strictly positive");
  }
}

bool approx_close(const ApproxComplex& a, const ApproxComplex& b, const Tolerance& tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol.abs_eps + tol.rel_eps * scale;
}

}  // namespace detvar
