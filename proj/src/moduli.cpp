#include "detvar/moduli.hpp"

namespace detvar {

HesseCubic hesse_reduce(const Poly& p) {
  if (p.nvars() != 3 || !p.is_homogeneous() || p.total_degree() != 3) {
    throw Error(ErrorCode::NotHesseShape, "expected a ternary cubic form");
  }
  const ExactComplex a = p.coefficient({3, 0, 0});
  const ExactComplex b = p.coefficient({0, 3, 0});
  const ExactComplex c = p.coefficient({0, 0, 3});
  const ExactComplex d = p.coefficient({1, 1, 1});
  const std::size_t expected = 3 + (d.is_zero() ? 0 : 1);
  if (a.is_zero() || b.is_zero() || c.is_zero() || p.term_count() != expected) {
    throw Error(ErrorCode::NotHesseShape, "cubic is not of the form a r1^3 + b r2^3 + c r3^3 + d r1 r2 r3");
  }
  HesseCubic h;
  h.lambda_cubed = -(d * d * d) / (a * b * c);
  h.provenance = "r1 -> r1/a^(1/3), r2 -> r2/b^(1/3), r3 -> r3/c^(1/3) with a=" + to_string(a) + ", b=" + to_string(b) +
                 ", c=" + to_string(c) + ", d=" + to_string(d);
  return h;
}

ModuliValue moduli_value(const ExactComplex& c) {
  const ExactComplex den = ExactComplex(27) - c;
  if (den.is_zero()) return {};
  const ExactComplex shifted = c + ExactComplex(216);
  return {c * shifted * shifted * shifted / (den * den * den)};
}

ModuliValue moduli_value(const HesseCubic& h) { return moduli_value(h.lambda_cubed); }

std::string ModuliValue::to_string() const { return value ? detvar::to_string(*value) : "degenerate"; }

const char* to_string(LuComparison c) noexcept {
  return c == LuComparison::DistinguishedInequivalent ? "DistinguishedInequivalent" : "NotDistinguished";
}

LuComparison lu_compare(const HesseCubic& a, const HesseCubic& b) {
  const auto ka = moduli_value(a);
  const auto kb = moduli_value(b);
  if (ka.value && kb.value && *ka.value != *kb.value) return LuComparison::DistinguishedInequivalent;
  return LuComparison::NotDistinguished;
}

HesseCubic cubic_family_hesse(const ExactComplex& t_cubed) {
  if (t_cubed.is_zero()) throw Error(ErrorCode::BadParams, "t^3 must be nonzero");
  const ExactComplex num = t_cubed + ExactComplex(2);
  return {num * num * num / t_cubed, "r1 -> r1'/t with t^3 = " + to_string(t_cubed)};
}

}  // namespace detvar
