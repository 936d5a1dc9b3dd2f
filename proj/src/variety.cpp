#include "detvar/variety.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace detvar {

namespace {

std::vector<ExactComplex> dyadic_point(std::span<const ApproxComplex> r) {
  const auto normalized = normalize_projective(r);
  std::vector<ExactComplex> out;
  out.reserve(normalized.size());
  for (const auto& z : normalized) out.push_back(exact_from(z));
  return out;
}

double sqrt_ratio(const Rational& num, const Rational& den) {
  if (den.is_zero()) return 0.0;
  return std::sqrt(to_double(num / den));
}

double generator_residual_exact(const Variety& v, std::span<const ExactComplex> r) {
  Rational num = 0;
  for (const auto& g : v.generators) num += g.evaluate(r).norm();
  const ExactMatrix mr = v.pencil.evaluate(r);
  Rational den = 1;
  for (Eigen::Index k = 0; k < mr.rows(); ++k) den *= mr.row(k).squaredNorm();
  return sqrt_ratio(num, den);
}

double hermitian_residual_exact(const Variety& v, std::span<const ExactComplex> r) {
  const ExactMatrix h = v.hermitian_form(r);
  Rational den = 1;
  for (Eigen::Index k = 0; k < h.rows(); ++k) den *= h(k, k).re;
  const ExactComplex det = det_exact(h);
  return sqrt_ratio(abs(det.re), den);
}

std::vector<Exponents> monomials(std::size_t nvars, unsigned degree) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  const auto recurse = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (nvars == 0) return out;
  recurse(recurse, 0, degree);
  return out;
}

/// Independent combinations of the generators spanning the same space.
std::vector<Poly> generator_basis(std::span<const Poly> forms, std::size_t m, unsigned degree) {
  const auto cols = monomials(m, degree);
  std::vector<Poly> nonzero;
  for (const auto& g : forms)
    if (!g.is_zero()) nonzero.push_back(g);
  ExactMatrix a(static_cast<Eigen::Index>(nonzero.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < nonzero.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = nonzero[i].coefficient(cols[j]);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const ExactComplex inv = a(row, col).inverse();
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const ExactComplex f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    ++row;
  }
  std::vector<Poly> basis;
  for (Eigen::Index i = 0; i < row; ++i) {
    Poly p = Poly::zero(m);
    for (std::size_t j = 0; j < cols.size(); ++j) p.add_term(cols[j], a(i, static_cast<Eigen::Index>(j)));
    basis.push_back(std::move(p));
  }
  return basis;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

LinearForm PencilMatrix::entry(std::size_t k, std::size_t l) const {
  LinearForm f;
  f.coefficients.reserve(nvars);
  for (const auto& a : blocks) f.coefficients.push_back(a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)));
  return f;
}

PolyMatrix PencilMatrix::to_poly_matrix() const {
  PolyMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t l = 0; l < cols; ++l)
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = entry(k, l).to_poly();
  return out;
}

ExactMatrix PencilMatrix::evaluate(std::span<const ExactComplex> r) const {
  if (r.size() != nvars) throw Error(ErrorCode::ArityMismatch, "pencil evaluation point");
  ExactMatrix out = ExactMatrix::Constant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols), ExactComplex{});
  for (std::size_t i = 0; i < nvars; ++i) {
    if (r[i].is_zero()) continue;
    out += blocks[i] * r[i];
  }
  return out;
}

ApproxMatrix PencilMatrix::evaluate(std::span<const ApproxComplex> r) const {
  if (r.size() != nvars) throw Error(ErrorCode::ArityMismatch, "pencil evaluation point");
  ApproxMatrix out = ApproxMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < nvars; ++i) out += to_approx(blocks[i]) * r[i];
  return out;
}

PencilMatrix pencil_matrix(const ExactState& s, Side side) {
  if (!s.ensemble) throw Error(ErrorCode::MissingEnsemble, "pencil construction needs an ensemble");
  const ExactState oriented = side == Side::A ? s : swap_sides(s);
  const ExactMatrix a = ensemble_matrix(oriented);
  PencilMatrix p;
  p.nvars = oriented.m;
  p.rows = oriented.n;
  p.cols = static_cast<std::size_t>(a.cols());
  for (std::size_t i = 0; i < oriented.m; ++i)
    p.blocks.push_back(a.middleRows(static_cast<Eigen::Index>(i * oriented.n), static_cast<Eigen::Index>(oriented.n)));
  return p;
}

bool Variety::full() const {
  return t < n || std::all_of(generators.begin(), generators.end(), [](const Poly& g) { return g.is_zero(); });
}

std::size_t Variety::nonzero_generator_count() const {
  return static_cast<std::size_t>(
      std::count_if(generators.begin(), generators.end(), [](const Poly& g) { return !g.is_zero(); }));
}

ExactMatrix Variety::hermitian_form(std::span<const ExactComplex> r) const {
  if (r.size() != m) throw Error(ErrorCode::ArityMismatch, "hermitian form evaluation point");
  const auto ni = static_cast<Eigen::Index>(n);
  ExactMatrix h = ExactMatrix::Constant(ni, ni, ExactComplex{});
  for (std::size_t i = 0; i < m; ++i) {
    if (r[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (r[j].is_zero()) continue;
      h += hermitian_blocks[i * m + j] * (r[i] * r[j].conj());
    }
  }
  return h;
}

Variety build_variety(const ExactState& s, Side side, Mode mode) {
  Variety v;
  v.side = side;
  v.mode = mode;
  v.pencil = pencil_matrix(s, side);
  v.m = v.pencil.nvars;
  v.n = v.pencil.rows;
  v.t = v.pencil.cols;

  const ExactState oriented = side == Side::A ? s : swap_sides(s);
  ExactMatrix p = ExactMatrix::Constant(static_cast<Eigen::Index>(v.t), static_cast<Eigen::Index>(v.t), ExactComplex{});
  for (std::size_t l = 0; l < v.t; ++l) p(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)) = (*oriented.ensemble)[l].weight;
  for (std::size_t i = 0; i < v.m; ++i)
    for (std::size_t j = 0; j < v.m; ++j) v.hermitian_blocks.push_back(v.pencil.blocks[i] * p * v.pencil.blocks[j].adjoint());

  if (v.t >= v.n) v.generators = minors(v.pencil.to_poly_matrix(), v.n);
  for (auto& g : v.generators) {
    g = g.promoted(v.m);
    v.approx_generators.emplace_back(g);
  }
  return v;
}

Variety build_variety(const ApproxState& s, Side side) {
  if (!s.ensemble) throw Error(ErrorCode::MissingEnsemble, "variety construction needs an ensemble");
  ApproxState ensemble_only = s;
  ensemble_only.density.reset();
  return build_variety(exact_from(ensemble_only), side, Mode::Approx);
}

std::optional<Poly> essential_generator(const Variety& v) {
  const Poly* first = nullptr;
  for (const auto& g : v.generators) {
    if (g.is_zero()) continue;
    if (!first) {
      first = &g;
      continue;
    }
    if (g * first->leading_coefficient() != *first * g.leading_coefficient()) return std::nullopt;
  }
  if (!first) return std::nullopt;
  return *first;
}

std::vector<ApproxComplex> normalize_projective(std::span<const ApproxComplex> r) {
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::abs(r[i]) > best) {
      best = std::abs(r[i]);
      pivot = i;
    }
  }
  if (!(best > 0.0) || !std::isfinite(best)) throw Error(ErrorCode::ZeroDirection, "projective point is zero");
  std::vector<ApproxComplex> out(r.begin(), r.end());
  const ApproxComplex scale = r[pivot];
  if (scale == ApproxComplex(1.0, 0.0)) return out;
  for (auto& z : out) z /= scale;
  out[pivot] = 1.0;
  return out;
}

std::vector<ExactComplex> normalize_projective(std::span<const ExactComplex> r) {
  std::size_t pivot = 0;
  Rational best = -1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Rational nrm = r[i].norm();
    if (nrm > best) {
      best = nrm;
      pivot = i;
    }
  }
  if (best <= 0) throw Error(ErrorCode::ZeroDirection, "projective point is zero");
  const ExactComplex inv = r[pivot].inverse();
  std::vector<ExactComplex> out;
  out.reserve(r.size());
  for (const auto& z : r) out.push_back(z * inv);
  return out;
}

double generator_residual(const Variety& v, std::span<const ApproxComplex> r) {
  const auto point = dyadic_point(r);
  return generator_residual_exact(v, point);
}

double hermitian_residual(const Variety& v, std::span<const ApproxComplex> r) {
  const auto point = dyadic_point(r);
  return hermitian_residual_exact(v, point);
}

MembershipResult membership(const Variety& v, std::span<const ApproxComplex> r, const Tolerance& tol) {
  if (r.size() != v.m) throw Error(ErrorCode::ArityMismatch, "membership point arity");
  const auto point = dyadic_point(r);
  MembershipResult res;
  res.generator_residual = generator_residual_exact(v, point);
  res.hermitian_residual = hermitian_residual_exact(v, point);
  const bool by_generators = res.generator_residual <= tol.abs_eps;
  const bool by_hermitian = res.hermitian_residual <= tol.abs_eps;
  const double guard = std::sqrt(tol.abs_eps);
  if ((by_generators && res.hermitian_residual > guard) || (by_hermitian && res.generator_residual > guard)) {
    throw Error(ErrorCode::InconsistentRepresentations,
                "minors residual " + std::to_string(res.generator_residual) + " vs Hermitian residual " +
                    std::to_string(res.hermitian_residual));
  }
  res.member = by_generators && by_hermitian;
  return res;
}

MembershipResult membership(const Variety& v, std::span<const ExactComplex> r) {
  if (r.size() != v.m) throw Error(ErrorCode::ArityMismatch, "membership point arity");
  const auto point = normalize_projective(r);
  const bool by_generators =
      std::all_of(v.generators.begin(), v.generators.end(), [&](const Poly& g) { return g.evaluate(point).is_zero(); });
  const bool by_hermitian = det_exact(v.hermitian_form(point)).is_zero();
  if (by_generators != by_hermitian) {
    throw Error(ErrorCode::InconsistentRepresentations, "exact minors and Hermitian determinant disagree");
  }
  MembershipResult res;
  res.member = by_generators;
  res.generator_residual = generator_residual_exact(v, point);
  res.hermitian_residual = hermitian_residual_exact(v, point);
  return res;
}

TangentSpace tangent_space(std::span<const Poly> equations, std::span<const ApproxComplex> p, std::size_t codim) {
  const auto m = static_cast<Eigen::Index>(p.size());
  std::vector<ApproxVector> rows;
  for (const auto& eq : equations) {
    if (eq.is_zero()) continue;
    const auto g = gradient(eq, p);
    ApproxVector row = Eigen::Map<const ApproxVector>(g.data(), m);
    const double nrm = row.norm();
    if (nrm > 0.0) rows.push_back(row / nrm);
  }
  if (rows.empty()) throw Error(ErrorCode::SingularPoint, "every gradient vanishes");
  ApproxMatrix j(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t i = 0; i < rows.size(); ++i) j.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();

  Eigen::JacobiSVD<ApproxMatrix> svd(j, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double top = sigma.size() > 0 ? sigma(0) : 0.0;
  std::size_t loose = 0, strict = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > 1e-6 * top) ++loose;
    if (sigma(k) > 1e-9 * top) ++strict;
  }
  if (top == 0.0 || loose != strict || loose != codim) {
    throw Error(ErrorCode::SingularPoint, "Jacobian rank is unstable or differs from the codimension");
  }

  const ApproxMatrix& vmat = svd.matrixV();
  TangentSpace ts;
  for (std::size_t k = 0; k < codim; ++k) {
    ApproxLinearForm f;
    for (Eigen::Index i = 0; i < m; ++i) f.coefficients.push_back(std::conj(vmat(i, static_cast<Eigen::Index>(k))));
    ts.forms.push_back(std::move(f));
  }
  const ApproxVector pv = Eigen::Map<const ApproxVector>(p.data(), m).normalized();
  ApproxMatrix null = vmat.rightCols(m - static_cast<Eigen::Index>(codim));
  null -= pv * (pv.adjoint() * null);
  if (null.cols() == 0) {
    ts.directions = ApproxMatrix(m, 0);
    return ts;
  }
  Eigen::JacobiSVD<ApproxMatrix> rest(null, Eigen::ComputeThinU);
  Eigen::Index keep = 0;
  for (Eigen::Index k = 0; k < rest.singularValues().size(); ++k)
    if (rest.singularValues()(k) > 1e-8) ++keep;
  ts.directions = rest.matrixU().leftCols(keep);
  return ts;
}

ApproxLinearForm tangent_form(const Variety& v, const SamplePoint& p, const Tolerance& tol) {
  const auto g = essential_generator(v);
  if (!g) throw Error(ErrorCode::UnsupportedShape, "tangent hyperplane needs a hypersurface");
  const ApproxPoly ag(*g);
  const auto grad = ag.gradient(p.point);
  double nrm = 0.0;
  for (const auto& c : grad) nrm += std::norm(c);
  if (std::sqrt(nrm) <= 10.0 * tol.abs_eps * ag.coefficient_norm()) {
    throw Error(ErrorCode::SingularPoint, "gradient of the determinant vanishes");
  }
  return ApproxLinearForm{grad, 0.0};
}

bool certify_empty(std::span<const Poly> forms, std::size_t m) {
  const auto first = std::find_if(forms.begin(), forms.end(), [](const Poly& g) { return !g.is_zero(); });
  if (first == forms.end() || m == 0) return false;
  const auto degree = static_cast<unsigned>(first->total_degree());
  for (const auto& g : forms) {
    if (!g.is_zero() && (!g.is_homogeneous() || g.total_degree() != static_cast<int>(degree))) {
      throw Error(ErrorCode::UnsupportedShape, "emptiness check needs forms of one degree");
    }
  }
  if (degree == 0) return true;
  const std::vector<Poly> basis = generator_basis(forms, m, degree);
  const unsigned top = static_cast<unsigned>(m * (degree - 1) + 1);
  for (unsigned d = degree; d <= top; ++d) {
    const std::size_t ncols = binomial(d + m - 1, m - 1);
    if (ncols > 400) break;
    const auto shifts = monomials(m, d - degree);
    if (shifts.size() * basis.size() < ncols) continue;
    const auto cols = monomials(m, d);
    std::map<Exponents, Eigen::Index> index;
    for (std::size_t j = 0; j < cols.size(); ++j) index.emplace(cols[j], static_cast<Eigen::Index>(j));

    ExactMatrix mac = ExactMatrix::Constant(static_cast<Eigen::Index>(shifts.size() * basis.size()),
                                            static_cast<Eigen::Index>(ncols), ExactComplex{});
    Eigen::Index row = 0;
    for (const auto& s : shifts) {
      for (const auto& b : basis) {
        for (const auto& [e, c] : b.terms()) {
          Exponents shifted = e;
          for (std::size_t i = 0; i < m; ++i) shifted[i] += s[i];
          mac(row, index.at(shifted)) = c;
        }
        ++row;
      }
    }
    ApproxMatrix numeric = to_approx(mac);
    for (Eigen::Index i = 0; i < numeric.rows(); ++i) {
      const double nrm = numeric.row(i).norm();
      if (nrm > 0.0) numeric.row(i) /= nrm;
    }
    Eigen::ColPivHouseholderQR<ApproxMatrix> qr(numeric);
    qr.setThreshold(1e-10);
    if (static_cast<std::size_t>(qr.rank()) < ncols) continue;
    if (rank_exact(mac) == ncols) return true;
  }
  return false;
}

bool certify_empty(const Variety& v) {
  if (v.full()) return false;
  return certify_empty(v.generators, v.m);
}

WitnessCheck recheck_witness(const Variety& v, const Witness& w, const Tolerance& tol) {
  WitnessCheck c;
  c.point_residual = hermitian_residual(v, w.point);
  c.probe_residual = hermitian_residual(v, w.probe);
  const auto p = normalize_projective(w.point);
  const auto q = normalize_projective(w.probe);
  for (const auto& f : w.tangent) {
    c.tangent_defect = std::max(c.tangent_defect, std::abs(f.evaluate(p)));
    c.tangent_defect = std::max(c.tangent_defect, std::abs(f.evaluate(q)));
  }
  c.valid = c.point_residual <= tol.abs_eps && c.tangent_defect <= std::sqrt(tol.abs_eps) &&
            std::abs(c.probe_residual - w.residual) <= 1e-12 && c.probe_residual > 10.0 * tol.abs_eps;
  return c;
}

const char* to_string(VerdictTag tag) noexcept {
  switch (tag) {
    case VerdictTag::Empty:
      return "Empty";
    case VerdictTag::Full:
      return "Full";
    case VerdictTag::LinearUnion:
      return "LinearUnion";
    case VerdictTag::NonlinearWitness:
      return "NonlinearWitness";
    case VerdictTag::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace detvar
