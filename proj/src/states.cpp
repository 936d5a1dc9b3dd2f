#include "detvar/states.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>

namespace detvar {

namespace {

void check_dims(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw Error(ErrorCode::BadDims, "dimensions must be at least 1");
}

template <class Scalar>
void check_shapes(const BipartiteState<Scalar>& s) {
  check_dims(s.m, s.n);
  if (!s.ensemble && !s.density) throw Error(ErrorCode::NotAState, "state has neither ensemble nor density");
  const auto dim = static_cast<Eigen::Index>(s.dim());
  if (s.density && (s.density->rows() != dim || s.density->cols() != dim)) {
    throw Error(ErrorCode::NotAState, "density is not (m*n)x(m*n)");
  }
  if (s.ensemble) {
    if (s.ensemble->empty()) throw Error(ErrorCode::NotAState, "ensemble is empty");
    for (const auto& term : *s.ensemble)
      if (term.vector.size() != dim) throw Error(ErrorCode::NotAState, "ensemble vector length is not m*n");
  }
}

std::vector<double> spectrum(const ApproxMatrix& m, const Tolerance& tol) { return hermitian_eigen(m, tol).eigenvalues; }

double entropy(const std::vector<double>& lambda, const Tolerance& tol) {
  double s = 0.0;
  for (double l : lambda)
    if (l > tol.eig_cutoff) s -= l * std::log(l);
  return s;
}

ApproxVector gaussian_vector(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> g;
  ApproxVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double re = g(rng);
    v(i) = {re, g(rng)};
  }
  return v;
}

ApproxMatrix haar_unitary(std::mt19937_64& rng, std::size_t size) {
  const auto d = static_cast<Eigen::Index>(size);
  ApproxMatrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j) z.col(j) = gaussian_vector(rng, d);
  Eigen::HouseholderQR<ApproxMatrix> qr(z);
  ApproxMatrix q = qr.householderQ();
  const ApproxMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ExactVector gaussian_integer_vector(std::mt19937_64& rng, std::size_t size) {
  std::uniform_int_distribution<int> d(-3, 3);
  ExactVector v(static_cast<Eigen::Index>(size));
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const int re = d(rng);
      v(i) = ExactComplex(re, d(rng));
    }
  } while (std::all_of(v.begin(), v.end(), [](const ExactComplex& c) { return c.is_zero(); }));
  return v;
}

}  // namespace

void validate(const ExactState& s, const Tolerance& tol) {
  check_shapes(s);
  if (s.ensemble) {
    Rational total = 0;
    for (const auto& term : *s.ensemble) {
      if (term.weight <= 0) throw Error(ErrorCode::NotAState, "ensemble weights must be positive");
      total += term.weight * term.vector.squaredNorm();
    }
    if (total != 1) throw Error(ErrorCode::NotAState, "ensemble trace is " + to_string(total) + ", expected 1");
  }
  if (s.density) {
    const ExactMatrix& rho = *s.density;
    if (rho != rho.adjoint()) throw Error(ErrorCode::NotAState, "density is not Hermitian");
    if (!trace<ExactComplex>(rho).is_one()) throw Error(ErrorCode::NotAState, "density trace is not 1");
    if (!psd_check(rho, tol)) throw Error(ErrorCode::NotAState, "density is not positive semidefinite");
  }
}

void validate(const ApproxState& s, const Tolerance& tol) {
  check_shapes(s);
  if (s.ensemble) {
    double total = 0.0;
    for (const auto& term : *s.ensemble) {
      if (!(term.weight > 0.0)) throw Error(ErrorCode::NotAState, "ensemble weights must be positive");
      if (!approx_close(term.vector.norm(), 1.0, tol)) throw Error(ErrorCode::NotAState, "ensemble vector is not unit");
      total += term.weight;
    }
    if (!approx_close(total, 1.0, tol)) throw Error(ErrorCode::NotAState, "ensemble weights do not sum to 1");
  }
  if (s.density) {
    const ApproxMatrix& rho = *s.density;
    if (!rho.allFinite()) throw Error(ErrorCode::NotAState, "density has non-finite entries");
    if (!is_hermitian(rho, tol)) throw Error(ErrorCode::NotAState, "density is not Hermitian");
    if (!approx_close(rho.trace(), 1.0, tol)) throw Error(ErrorCode::NotAState, "density trace is not 1");
    if (!psd_check(rho, tol)) throw Error(ErrorCode::NotAState, "density is not positive semidefinite");
  }
}

ApproxState ensemble_from_density(const ApproxMatrix& rho, std::size_t m, std::size_t n, const Tolerance& tol) {
  check_dims(m, n);
  ApproxState s;
  s.m = m;
  s.n = n;
  s.density = rho;
  validate(s, tol);
  const EigenResult eig = hermitian_eigen(rho, tol);
  const double scale = std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
  s.ensemble.emplace();
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] <= tol.eig_cutoff * scale) continue;
    s.ensemble->push_back({eig.eigenvalues[k], eig.eigenvectors.col(static_cast<Eigen::Index>(k))});
  }
  return s;
}

ApproxState to_approx(const ExactState& s) {
  ApproxState out;
  out.m = s.m;
  out.n = s.n;
  out.label = s.label;
  if (s.ensemble) {
    out.ensemble.emplace();
    for (const auto& term : *s.ensemble) {
      // Unit vectors with the squared norm moved into the weight.
      const ApproxVector v = to_approx(term.vector);
      const double norm = v.norm();
      out.ensemble->push_back({to_double(term.weight) * norm * norm, v / norm});
    }
  }
  if (s.density) out.density = to_approx(*s.density);
  return out;
}

ExactState exact_from(const ApproxState& s) {
  ExactState out;
  out.m = s.m;
  out.n = s.n;
  out.label = s.label;
  if (s.ensemble) {
    out.ensemble.emplace();
    for (const auto& term : *s.ensemble) out.ensemble->push_back({exact_from(term.weight), exact_from(term.vector)});
  }
  if (s.density) out.density = exact_from(*s.density);
  return out;
}

ApproxState apply_local_unitary(const ApproxState& s, const LocalUnitaryPair& u) {
  if (u.ua.rows() != static_cast<Eigen::Index>(s.m) || u.ua.cols() != u.ua.rows() ||
      u.ub.rows() != static_cast<Eigen::Index>(s.n) || u.ub.cols() != u.ub.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "local unitary dimensions do not match the state");
  }
  const ApproxMatrix t = kron<ApproxComplex>(u.ua, u.ub);
  ApproxState out;
  out.m = s.m;
  out.n = s.n;
  out.label = s.label;
  if (s.ensemble) {
    out.ensemble.emplace();
    for (const auto& term : *s.ensemble) out.ensemble->push_back({term.weight, t * term.vector});
  }
  if (s.density) out.density = t * *s.density * t.adjoint();
  return out;
}

bool ppt_check(const ExactState& s, const Tolerance& tol) {
  return psd_check(partial_transpose<ExactComplex>(density_of(s), s.m, s.n), tol);
}

bool ppt_check(const ApproxState& s, const Tolerance& tol) {
  return psd_check(partial_transpose<ApproxComplex>(density_of(s), s.m, s.n), tol);
}

SpectraReport entropy_and_spectra(const ApproxState& s, const Tolerance& tol) {
  const ApproxMatrix rho = density_of(s);
  SpectraReport r;
  r.global = spectrum(rho, tol);
  r.local_a = spectrum(partial_trace<ApproxComplex>(rho, s.m, s.n, Subsystem::B), tol);
  r.local_b = spectrum(partial_trace<ApproxComplex>(rho, s.m, s.n, Subsystem::A), tol);
  r.entropies = {entropy(r.global, tol), entropy(r.local_a, tol), entropy(r.local_b, tol)};
  return r;
}

SpectraReport entropy_and_spectra(const ExactState& s, const Tolerance& tol) {
  ApproxState a;
  a.m = s.m;
  a.n = s.n;
  a.density = to_approx(density_of(s));
  return entropy_and_spectra(a, tol);
}

ApproxState random_mixed_state(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed) {
  check_dims(m, n);
  if (rank == 0) throw Error(ErrorCode::BadDims, "rank must be at least 1");
  std::mt19937_64 rng(seed);
  ApproxState s;
  s.m = m;
  s.n = n;
  s.label = "random mixed";
  s.ensemble.emplace();
  double total = 0.0;
  for (std::size_t l = 0; l < rank; ++l) {
    const ApproxVector g = gaussian_vector(rng, static_cast<Eigen::Index>(m * n));
    total += g.squaredNorm();
    s.ensemble->push_back({g.squaredNorm(), g.normalized()});
  }
  for (auto& term : *s.ensemble) term.weight /= total;
  return s;
}

ExactState random_separable_state(std::size_t m, std::size_t n, std::size_t terms, std::uint64_t seed) {
  check_dims(m, n);
  if (terms == 0) throw Error(ErrorCode::BadDims, "ensemble size must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> q(1, 9);
  ExactState s;
  s.m = m;
  s.n = n;
  s.label = "random separable";
  s.ensemble.emplace();
  Rational total = 0;
  for (std::size_t l = 0; l < terms; ++l) {
    const ExactMatrix a = gaussian_integer_vector(rng, m);
    const ExactMatrix b = gaussian_integer_vector(rng, n);
    ExactVector v = kron<ExactComplex>(a, b);
    const Rational w(q(rng));
    total += w * v.squaredNorm();
    s.ensemble->push_back({w, std::move(v)});
  }
  for (auto& term : *s.ensemble) term.weight /= total;
  return s;
}

LocalUnitaryPair random_local_unitary(std::size_t m, std::size_t n, std::uint64_t seed) {
  check_dims(m, n);
  std::mt19937_64 rng(seed);
  LocalUnitaryPair u;
  u.ua = haar_unitary(rng, m);
  u.ub = haar_unitary(rng, n);
  return u;
}

}  // namespace detvar
