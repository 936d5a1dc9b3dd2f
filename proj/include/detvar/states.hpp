#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detvar/linalg.hpp"

namespace detvar {

/// One term w * u u^dagger of an ensemble. Exact ensembles may carry
/// unnormalized vectors; the weight then absorbs the squared norm.
template <class Scalar>
struct EnsembleTerm {
  RealOf<Scalar> weight;
  Vector<Scalar> vector;
};

/// State on C^m (x) C^n in the basis |11>..|1n>..|m1>..|mn>.
template <class Scalar>
struct BipartiteState {
  std::size_t m = 0;
  std::size_t n = 0;
  std::optional<std::vector<EnsembleTerm<Scalar>>> ensemble;
  std::optional<Matrix<Scalar>> density;
  std::string label;

  std::size_t dim() const { return m * n; }
};

using ExactState = BipartiteState<ExactComplex>;
using ApproxState = BipartiteState<ApproxComplex>;

struct LocalUnitaryPair {
  ApproxMatrix ua;
  ApproxMatrix ub;
};

/// mn x t matrix whose columns are the ensemble vectors.
template <class Scalar>
Matrix<Scalar> ensemble_matrix(const BipartiteState<Scalar>& s) {
  if (!s.ensemble) throw Error(ErrorCode::MissingEnsemble, "state has no ensemble");
  const auto& terms = *s.ensemble;
  Matrix<Scalar> a(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(terms.size()));
  for (std::size_t l = 0; l < terms.size(); ++l) {
    if (terms[l].vector.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "ensemble vector length");
    a.col(static_cast<Eigen::Index>(l)) = terms[l].vector;
  }
  return a;
}

/// A P A^dagger with P = diag(weights).
template <class Scalar>
Matrix<Scalar> density_from_ensemble(const BipartiteState<Scalar>& s) {
  const Matrix<Scalar> a = ensemble_matrix(s);
  Matrix<Scalar> p = Matrix<Scalar>::Constant(a.cols(), a.cols(), Scalar(0));
  for (Eigen::Index l = 0; l < a.cols(); ++l) p(l, l) = Scalar((*s.ensemble)[static_cast<std::size_t>(l)].weight);
  return a * p * a.adjoint();
}

/// The stored density, or the one assembled from the ensemble.
template <class Scalar>
Matrix<Scalar> density_of(const BipartiteState<Scalar>& s) {
  if (s.density) return *s.density;
  return density_from_ensemble(s);
}

/// The n x n block rho_ij (0-based i, j).
template <class Scalar>
Matrix<Scalar> block(const Matrix<Scalar>& rho, std::size_t m, std::size_t n, std::size_t i, std::size_t j) {
  detail::check_bipartite(rho.rows(), rho.cols(), m, n);
  if (i >= m || j >= m) throw Error(ErrorCode::IndexOutOfRange, "block index out of range");
  const auto ni = static_cast<Eigen::Index>(n);
  return rho.block(static_cast<Eigen::Index>(i) * ni, static_cast<Eigen::Index>(j) * ni, ni, ni);
}

/// Basis permutation |ik> -> |ki>, exchanging the roles of A and B.
template <class Scalar>
BipartiteState<Scalar> swap_sides(const BipartiteState<Scalar>& s) {
  const auto permute = [&](Eigen::Index idx) {
    const auto i = idx / static_cast<Eigen::Index>(s.n);
    const auto k = idx % static_cast<Eigen::Index>(s.n);
    return k * static_cast<Eigen::Index>(s.m) + i;
  };
  BipartiteState<Scalar> out;
  out.m = s.n;
  out.n = s.m;
  out.label = s.label;
  const auto dim = static_cast<Eigen::Index>(s.dim());
  if (s.ensemble) {
    out.ensemble.emplace();
    for (const auto& term : *s.ensemble) {
      Vector<Scalar> v(dim);
      for (Eigen::Index idx = 0; idx < dim; ++idx) v(permute(idx)) = term.vector(idx);
      out.ensemble->push_back({term.weight, std::move(v)});
    }
  }
  if (s.density) {
    Matrix<Scalar> d(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) d(permute(r), permute(c)) = (*s.density)(r, c);
    out.density = std::move(d);
  }
  return out;
}

/// Checks the state invariants. Exact ensembles need positive weights with
/// sum_l w_l |u_l|^2 = 1 exactly; approx ensembles need weights summing to
/// one and unit vectors; densities must be Hermitian, PSD and of trace one.
/// Throws NotAState or BadDims.
void validate(const ExactState& s, const Tolerance& tol = {});
void validate(const ApproxState& s, const Tolerance& tol = {});

/// Spectral ensemble keeping eigenvalues above eig_cutoff * |rho|. Throws
/// NotAState.
ApproxState ensemble_from_density(const ApproxMatrix& rho, std::size_t m, std::size_t n, const Tolerance& tol = {});

ApproxState to_approx(const ExactState& s);
/// Exact dyadic copy of every entry.
ExactState exact_from(const ApproxState& s);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger, ensemble vectors mapped by U_A (x) U_B.
ApproxState apply_local_unitary(const ApproxState& s, const LocalUnitaryPair& u);

bool ppt_check(const ExactState& s, const Tolerance& tol = {});
bool ppt_check(const ApproxState& s, const Tolerance& tol = {});

struct SpectraReport {
  std::vector<double> global;
  std::vector<double> local_a;  // spectrum of tr_B
  std::vector<double> local_b;  // spectrum of tr_A
  std::array<double, 3> entropies{};  // natural log, same order
};

SpectraReport entropy_and_spectra(const ApproxState& s, const Tolerance& tol = {});
SpectraReport entropy_and_spectra(const ExactState& s, const Tolerance& tol = {});

/// Normalized Gram state of an mn x rank complex Gaussian sample.
ApproxState random_mixed_state(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed);
/// sum_l q_l P_{a_l (x) b_l} with Gaussian-integer factors in [-3, 3]^2.
ExactState random_separable_state(std::size_t m, std::size_t n, std::size_t terms, std::uint64_t seed);
/// Haar-distributed pair from QR of complex Gaussian samples.
LocalUnitaryPair random_local_unitary(std::size_t m, std::size_t n, std::uint64_t seed);

}  // namespace detvar
