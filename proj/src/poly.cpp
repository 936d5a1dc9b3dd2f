#include <algorithm>
#include <numeric>

#include "detvar/multipoly.hpp"

namespace detvar {

namespace {

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0U); }

std::size_t unify_arity(const Poly& a, const Poly& b) {
  if (a.nvars() == b.nvars()) return a.nvars();
  if (a.nvars() == 0 && a.is_constant()) return b.nvars();
  if (b.nvars() == 0 && b.is_constant()) return a.nvars();
  throw Error(ErrorCode::ArityMismatch, "polynomials in " + std::to_string(a.nvars()) + " and " +
                                            std::to_string(b.nvars()) + " variables");
}

bool divides(const Exponents& small, const Exponents& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

std::vector<std::vector<Eigen::Index>> combinations(Eigen::Index n, Eigen::Index k) {
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), Eigen::Index{0});
  if (k > n) return out;
  while (true) {
    out.push_back(current);
    Eigen::Index i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < k; ++j)
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Poly cofactor_det(const PolyMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Poly acc;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMatrix sub(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        sub(r - 1, cc++) = m(r, c);
      }
    }
    Poly term = m(0, j) * cofactor_det(sub);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

}  // namespace

bool GrlexDescending::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = degree_of(a);
  const unsigned db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

Poly::Poly(const ExactComplex& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

Poly Poly::zero(std::size_t nvars) {
  Poly p;
  p.nvars_ = nvars;
  return p;
}

Poly Poly::constant(std::size_t nvars, const ExactComplex& c) {
  Poly p = zero(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(std::move(e), 1);
}

Poly Poly::monomial(Exponents exponents, const ExactComplex& c) {
  Poly p = zero(exponents.size());
  p.add_term(exponents, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(degree_of(terms_.begin()->first));
}

int Poly::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, var < e.size() ? e[var] : 0U);
  return static_cast<int>(d);
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = degree_of(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return degree_of(t.first) == d; });
}

ExactComplex Poly::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? ExactComplex{} : it->second;
}

void Poly::add_term(const Exponents& e, const ExactComplex& c) {
  if (c.is_zero()) return;
  if (e.size() != nvars_) {
    if (nvars_ == 0 && is_constant()) {
      *this = promoted(e.size());
    } else {
      throw Error(ErrorCode::ArityMismatch, "term arity does not match polynomial");
    }
  }
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& rhs) {
  const std::size_t n = unify_arity(*this, rhs);
  if (nvars_ != n) *this = promoted(n);
  const Poly& r = rhs.nvars() == n ? rhs : rhs.promoted(n);
  for (const auto& [e, c] : r.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  const std::size_t n = unify_arity(*this, rhs);
  if (nvars_ != n) *this = promoted(n);
  const Poly& r = rhs.nvars() == n ? rhs : rhs.promoted(n);
  for (const auto& [e, c] : r.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
  const std::size_t n = unify_arity(*this, rhs);
  const Poly a = promoted(n);
  const Poly b = rhs.promoted(n);
  Poly out = zero(n);
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

Poly& Poly::operator*=(const ExactComplex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

ExactComplex Poly::evaluate(std::span<const ExactComplex> point) const {
  if (nvars_ != 0 && point.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "evaluation point arity");
  std::vector<std::vector<ExactComplex>> powers(nvars_);
  ExactComplex acc;
  for (const auto& [e, c] : terms_) {
    ExactComplex term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(1);
      while (cache.size() <= e[i]) cache.push_back(cache.back() * point[i]);
      term *= cache[e[i]];
    }
    acc += term;
  }
  return acc;
}

ApproxComplex Poly::evaluate(std::span<const ApproxComplex> point) const { return ApproxPoly(*this)(point); }

Poly Poly::derivative(std::size_t var) const {
  Poly out = zero(nvars_);
  for (const auto& [e, c] : terms_) {
    if (var >= e.size() || e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * ExactComplex(static_cast<long>(e[var])));
  }
  return out;
}

Poly Poly::promoted(std::size_t nvars) const {
  if (nvars == nvars_) return *this;
  if (nvars_ != 0 || !is_constant()) {
    throw Error(ErrorCode::ArityMismatch, "cannot change the arity of a non-constant polynomial");
  }
  Poly out = zero(nvars);
  if (!terms_.empty()) out.add_term(Exponents(nvars, 0), terms_.begin()->second);
  return out;
}

Poly Poly::remap(std::size_t new_nvars, std::span<const int> target) const {
  if (target.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "remap target size");
  Poly out = zero(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(new_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (target[i] < 0 || static_cast<std::size_t>(target[i]) >= new_nvars) {
        throw Error(ErrorCode::ArityMismatch, "remap drops a variable that occurs");
      }
      ne[static_cast<std::size_t>(target[i])] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  const int d = degree_in(var);
  std::vector<Poly> out(static_cast<std::size_t>(std::max(d, 0) + 1), zero(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    const unsigned k = rest[var];
    rest[var] = 0;
    out[k].add_term(rest, c);
  }
  return out;
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += detvar::to_string(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out += "*";
      out += i < names.size() ? names[i] : "r" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.nvars_ == b.nvars_) return a.terms_ == b.terms_;
  if (a.is_constant() && b.is_constant()) return a.coefficient(Exponents(a.nvars_, 0)) == b.coefficient(Exponents(b.nvars_, 0));
  return false;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(const Poly& a, const Poly& b) {
  Poly r = a;
  return r *= b;
}
Poly operator*(const ExactComplex& c, Poly p) { return p *= c; }
Poly operator*(Poly p, const ExactComplex& c) { return p *= c; }
Poly operator-(const Poly& p) { return ExactComplex(-1) * p; }

Poly pow(const Poly& p, unsigned exponent) {
  Poly result = Poly::constant(p.nvars(), 1);
  Poly base = p;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::optional<Poly> try_divide(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const std::size_t n = unify_arity(p, q);
  Poly r = p.promoted(n);
  const Poly d = q.promoted(n);
  Poly quotient = Poly::zero(n);
  const Exponents& lead = d.leading_exponents();
  const ExactComplex lead_inv = d.leading_coefficient().inverse();
  Exponents shift(n), e(n);
  while (!r.is_zero()) {
    const Exponents& top = r.leading_exponents();
    if (!divides(lead, top)) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) shift[i] = top[i] - lead[i];
    const ExactComplex factor = r.leading_coefficient() * lead_inv;
    quotient.add_term(shift, factor);
    for (const auto& [ed, cd] : d.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ed[i] + shift[i];
      r.add_term(e, -(factor * cd));
    }
  }
  return quotient;
}

Poly divide_exact(const Poly& p, const Poly& q) {
  auto quotient = try_divide(p, q);
  if (!quotient) {
    throw Error(ErrorCode::InternalContradiction, "expected exact division failed: (" + p.to_string() + ") / (" +
                                                      q.to_string() + ")");
  }
  return std::move(*quotient);
}

LinearForm LinearForm::variable(std::size_t nvars, std::size_t index) {
  LinearForm f;
  f.coefficients.assign(nvars, ExactComplex{});
  f.coefficients.at(index) = 1;
  return f;
}

LinearForm LinearForm::from_poly(const Poly& p) {
  if (p.total_degree() > 1) throw Error(ErrorCode::UnsupportedShape, "not a linear form: " + p.to_string());
  LinearForm f;
  f.coefficients.assign(p.nvars(), ExactComplex{});
  for (const auto& [e, c] : p.terms()) {
    const auto it = std::find(e.begin(), e.end(), 1U);
    if (it == e.end()) {
      f.constant = c;
    } else {
      f.coefficients[static_cast<std::size_t>(it - e.begin())] = c;
    }
  }
  return f;
}

bool LinearForm::is_zero() const {
  return constant.is_zero() &&
         std::all_of(coefficients.begin(), coefficients.end(), [](const ExactComplex& c) { return c.is_zero(); });
}

Poly LinearForm::to_poly() const {
  Poly p = Poly::constant(nvars(), constant);
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (coefficients[i].is_zero()) continue;
    Exponents e(nvars(), 0);
    e[i] = 1;
    p.add_term(e, coefficients[i]);
  }
  return p;
}

ExactComplex LinearForm::evaluate(std::span<const ExactComplex> point) const {
  ExactComplex acc = constant;
  for (std::size_t i = 0; i < nvars(); ++i) acc += coefficients[i] * point[i];
  return acc;
}

LinearForm LinearForm::normalized() const {
  ExactComplex pivot;
  for (const auto& c : coefficients) {
    if (!c.is_zero()) {
      pivot = c;
      break;
    }
  }
  if (pivot.is_zero()) pivot = constant;
  if (pivot.is_zero()) return *this;
  const ExactComplex inv = pivot.inverse();
  LinearForm out = *this;
  for (auto& c : out.coefficients) c *= inv;
  out.constant *= inv;
  return out;
}

std::string LinearForm::to_string(std::span<const std::string> names) const { return to_poly().to_string(names); }

ApproxComplex ApproxLinearForm::evaluate(std::span<const ApproxComplex> point) const {
  ApproxComplex acc = constant;
  for (std::size_t i = 0; i < coefficients.size(); ++i) acc += coefficients[i] * point[i];
  return acc;
}

ApproxLinearForm ApproxLinearForm::normalized() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < coefficients.size(); ++i)
    if (std::abs(coefficients[i]) > std::abs(coefficients[best])) best = i;
  if (coefficients.empty() || std::abs(coefficients[best]) == 0.0) return *this;
  const ApproxComplex pivot = coefficients[best];
  ApproxLinearForm out = *this;
  for (auto& c : out.coefficients) c /= pivot;
  out.constant /= pivot;
  return out;
}

ApproxPoly::ApproxPoly(const Poly& p) : nvars_(p.nvars()) {
  terms_.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) {
    const ApproxComplex value = to_approx(c);
    terms_.push_back({e, value});
    norm1_ += std::abs(value);
    for (unsigned k : e) max_degree_ = std::max(max_degree_, k);
  }
}

ApproxComplex ApproxPoly::operator()(std::span<const ApproxComplex> point) const {
  if (nvars_ != 0 && point.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "evaluation point arity");
  std::vector<ApproxComplex> powers(nvars_ * (max_degree_ + 1));
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i * (max_degree_ + 1)] = 1.0;
    for (unsigned k = 1; k <= max_degree_; ++k)
      powers[i * (max_degree_ + 1) + k] = powers[i * (max_degree_ + 1) + k - 1] * point[i];
  }
  ApproxComplex acc = 0.0;
  for (const auto& term : terms_) {
    ApproxComplex v = term.coefficient;
    for (std::size_t i = 0; i < nvars_; ++i) v *= powers[i * (max_degree_ + 1) + term.exponents[i]];
    acc += v;
  }
  return acc;
}

std::vector<ApproxComplex> ApproxPoly::gradient(std::span<const ApproxComplex> point) const {
  if (point.size() != nvars_) throw Error(ErrorCode::ArityMismatch, "gradient point arity");
  const std::size_t stride = max_degree_ + 1;
  std::vector<ApproxComplex> powers(nvars_ * stride);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i * stride] = 1.0;
    for (unsigned k = 1; k <= max_degree_; ++k) powers[i * stride + k] = powers[i * stride + k - 1] * point[i];
  }
  std::vector<ApproxComplex> grad(nvars_, 0.0);
  for (const auto& term : terms_) {
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (term.exponents[v] == 0) continue;
      ApproxComplex value = term.coefficient * static_cast<double>(term.exponents[v]);
      for (std::size_t i = 0; i < nvars_; ++i) {
        const unsigned k = i == v ? term.exponents[i] - 1 : term.exponents[i];
        value *= powers[i * stride + k];
      }
      grad[v] += value;
    }
  }
  return grad;
}

Poly substitute_affine(const Poly& p, std::span<const LinearForm> map) {
  if (p.nvars() != 0 && map.size() != p.nvars()) {
    throw Error(ErrorCode::ArityMismatch, "substitution must cover every variable");
  }
  if (map.empty()) return p;
  const std::size_t target = map.front().nvars();
  for (const auto& f : map)
    if (f.nvars() != target) throw Error(ErrorCode::ArityMismatch, "substitution forms differ in arity");
  if (p.nvars() == 0) return p.promoted(target);

  std::vector<std::vector<Poly>> powers(map.size());
  Poly out = Poly::zero(target);
  for (const auto& [e, c] : p.terms()) {
    Poly term = Poly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) {
        cache.push_back(Poly::constant(target, 1));
        cache.push_back(map[i].to_poly());
      }
      while (cache.size() <= e[i]) cache.push_back(cache.back() * cache[1]);
      term *= cache[e[i]];
    }
    out += term;
  }
  return out;
}

std::vector<ApproxComplex> gradient(const Poly& p, std::span<const ApproxComplex> at) {
  return ApproxPoly(p).gradient(at);
}

Poly symbolic_det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "symbolic determinant of a non-square matrix");
  if (m.rows() == 0) return Poly(1);
  if (m.rows() <= 4) return cofactor_det(m);
  return bareiss_determinant<Poly>(m);
}

std::vector<Poly> minors(const PolyMatrix& m, std::size_t k) {
  const auto ki = static_cast<Eigen::Index>(k);
  if (ki > std::min(m.rows(), m.cols())) {
    throw Error(ErrorCode::BadOrder, "minor order " + std::to_string(k) + " exceeds matrix size");
  }
  std::vector<Poly> out;
  const auto row_sets = combinations(m.rows(), ki);
  const auto col_sets = combinations(m.cols(), ki);
  for (const auto& rows : row_sets) {
    for (const auto& cols : col_sets) {
      PolyMatrix sub(ki, ki);
      for (Eigen::Index i = 0; i < ki; ++i)
        for (Eigen::Index j = 0; j < ki; ++j)
          sub(i, j) = m(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      out.push_back(symbolic_det(sub));
    }
  }
  return out;
}

Poly resultant(const Poly& p, const Poly& q, std::size_t var) {
  const std::size_t n = unify_arity(p, q);
  if (var >= n) throw Error(ErrorCode::IndexOutOfRange, "resultant variable out of range");
  const Poly a = p.promoted(n);
  const Poly b = q.promoted(n);
  if (a.is_zero() || b.is_zero()) return Poly::zero(n);
  const int da = a.degree_in(var);
  const int db = b.degree_in(var);
  if (da == 0) return pow(a, static_cast<unsigned>(db));
  if (db == 0) return pow(b, static_cast<unsigned>(da));
  const auto ca = a.coefficients_in(var);
  const auto cb = b.coefficients_in(var);
  const int size = da + db;
  PolyMatrix s = PolyMatrix::Constant(size, size, Poly::zero(n));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) s(i, i + j) = ca[static_cast<std::size_t>(da - j)];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) s(db + i, i + j) = cb[static_cast<std::size_t>(db - j)];
  return symbolic_det(s);
}

}  // namespace detvar
