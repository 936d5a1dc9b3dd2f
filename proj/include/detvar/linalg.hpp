#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "detvar/error.hpp"
#include "detvar/scalars.hpp"

namespace detvar {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ExactMatrix = Matrix<ExactComplex>;
using ExactVector = Vector<ExactComplex>;
using ApproxMatrix = Eigen::MatrixXcd;
using ApproxVector = Eigen::VectorXcd;

/// Real counterpart of a scalar kind: Rational for ExactComplex, double for
/// ApproxComplex.
template <class Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

/// Integral-domain operations needed by fraction-free elimination. Specialized
/// for ExactComplex here and for Poly in multipoly.hpp.
template <class Scalar>
struct RingTraits;

template <>
struct RingTraits<ExactComplex> {
  static bool is_zero(const ExactComplex& a) { return a.is_zero(); }
  static ExactComplex exact_div(const ExactComplex& a, const ExactComplex& b) { return a / b; }
  static std::size_t cost(const ExactComplex&) { return 0; }
  static ExactComplex zero_like(const ExactComplex&) { return {}; }
  static ExactComplex one_like(const ExactComplex&) { return 1; }
};

/// Determinant by Bareiss fraction-free elimination. Every division is exact in
/// the ring, so intermediate entries stay minors of the input.
template <class Scalar>
Scalar bareiss_determinant(Matrix<Scalar> a) {
  using Traits = RingTraits<Scalar>;
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  if (n == 0) return Scalar(1);
  bool negate = false;
  Scalar previous = Traits::one_like(a(0, 0));
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = k; i < n; ++i) {
      if (Traits::is_zero(a(i, k))) continue;
      if (pivot < 0 || Traits::cost(a(i, k)) < Traits::cost(a(pivot, k))) pivot = i;
    }
    if (pivot < 0) return Traits::zero_like(a(0, 0));
    if (pivot != k) {
      a.row(pivot).swap(a.row(k));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = Traits::exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), previous);
      }
      a(i, k) = Traits::zero_like(a(i, k));
    }
    previous = a(k, k);
  }
  return negate ? Scalar(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

/// Exact determinant over Q(i). Throws NonSquare.
ExactComplex det_exact(const ExactMatrix& m);

/// Exact rank by Gaussian elimination with exact pivot tests.
std::size_t rank_exact(const ExactMatrix& m);

struct EigenResult {
  std::vector<double> eigenvalues;  // descending
  ApproxMatrix eigenvectors;        // columns, unitary
  double residual = 0.0;            // max_k |M u_k - lambda_k u_k|
};

/// Cyclic complex Jacobi rotations. Throws NotHermitian, NonSquare, or
/// NoConvergence after 100 sweeps.
EigenResult hermitian_eigen(const ApproxMatrix& m, const Tolerance& tol = {});

bool is_hermitian(const ApproxMatrix& m, const Tolerance& tol = {});

/// All eigenvalues >= -eig_cutoff * |M|. Throws NotHermitian.
bool psd_check(const ApproxMatrix& m, const Tolerance& tol = {});
bool psd_check(const ExactMatrix& m, const Tolerance& tol = {});

ApproxMatrix to_approx(const ExactMatrix& m);
ApproxVector to_approx(const ExactVector& v);
ExactMatrix exact_from(const ApproxMatrix& m);
ExactVector exact_from(const ApproxVector& v);

template <class Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

enum class Subsystem { A, B };

namespace detail {
inline void check_bipartite(Eigen::Index rows, Eigen::Index cols, std::size_t m, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(m * n);
  if (m == 0 || n == 0 || rows != dim || cols != dim) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not (m*n)x(m*n)");
  }
}
}  // namespace detail

/// Transpose on subsystem A: block (i,j) is replaced by block (j,i).
template <class Scalar>
Matrix<Scalar> partial_transpose(const Matrix<Scalar>& rho, std::size_t m, std::size_t n) {
  detail::check_bipartite(rho.rows(), rho.cols(), m, n);
  const auto mi = static_cast<Eigen::Index>(m);
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix<Scalar> out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < mi; ++i) {
    for (Eigen::Index j = 0; j < mi; ++j) {
      out.block(i * ni, j * ni, ni, ni) = rho.block(j * ni, i * ni, ni, ni);
    }
  }
  return out;
}

/// traced == B gives the m x m reduced state on A; traced == A gives n x n.
template <class Scalar>
Matrix<Scalar> partial_trace(const Matrix<Scalar>& rho, std::size_t m, std::size_t n, Subsystem traced) {
  detail::check_bipartite(rho.rows(), rho.cols(), m, n);
  const auto mi = static_cast<Eigen::Index>(m);
  const auto ni = static_cast<Eigen::Index>(n);
  if (traced == Subsystem::B) {
    Matrix<Scalar> out(mi, mi);
    for (Eigen::Index i = 0; i < mi; ++i) {
      for (Eigen::Index j = 0; j < mi; ++j) {
        Scalar acc = Scalar(0);
        for (Eigen::Index k = 0; k < ni; ++k) acc += rho(i * ni + k, j * ni + k);
        out(i, j) = acc;
      }
    }
    return out;
  }
  Matrix<Scalar> out = Matrix<Scalar>::Constant(ni, ni, Scalar(0));
  for (Eigen::Index i = 0; i < mi; ++i) out += rho.block(i * ni, i * ni, ni, ni);
  return out;
}

template <class Scalar>
Scalar trace(const Matrix<Scalar>& m) {
  Scalar acc = Scalar(0);
  for (Eigen::Index i = 0; i < std::min(m.rows(), m.cols()); ++i) acc += m(i, i);
  return acc;
}

}  // namespace detvar
