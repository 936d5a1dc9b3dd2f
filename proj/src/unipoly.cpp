#include "detvar/unipoly.hpp"

namespace detvar {

std::pair<ExactUniPoly, ExactUniPoly> divmod(const ExactUniPoly& a, const ExactUniPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "univariate division by zero");
  if (a.degree() < b.degree()) return {ExactUniPoly{}, a};
  std::vector<ExactComplex> rem = a.coefficients();
  std::vector<ExactComplex> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const ExactComplex lead_inv = b.leading().inverse();
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = quot.size(); k-- > 0;) {
    const ExactComplex factor = rem[k + db] * lead_inv;
    quot[k] = factor;
    if (factor.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= factor * b[j];
  }
  rem.resize(db);
  return {ExactUniPoly(std::move(quot)), ExactUniPoly(std::move(rem))};
}

ExactUniPoly monic(const ExactUniPoly& p) {
  if (p.is_zero()) return p;
  return p * p.leading().inverse();
}

ExactUniPoly gcd(ExactUniPoly a, ExactUniPoly b) {
  while (!b.is_zero()) {
    ExactUniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

ExactUniPoly squarefree_part(const ExactUniPoly& p) {
  if (p.degree() <= 0) return monic(p);
  const ExactUniPoly g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

ApproxUniPoly to_approx(const ExactUniPoly& p) {
  std::vector<ApproxComplex> c;
  c.reserve(p.coefficients().size());
  for (const auto& z : p.coefficients()) c.push_back(to_approx(z));
  return ApproxUniPoly(std::move(c));
}

std::string to_string(const ExactUniPoly& p, const std::string& name) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const auto& c = p[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += to_string(c);
    if (k >= 1) out += "*" + name;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace detvar
