#include "detvar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace detvar {

ExactComplex det_exact(const ExactMatrix& m) { return bareiss_determinant<ExactComplex>(m); }

std::size_t rank_exact(const ExactMatrix& m) {
  ExactMatrix a = m;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const ExactComplex inv = a(row, col).inverse();
    for (Eigen::Index i = row + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      const ExactComplex factor = a(i, col) * inv;
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    ++row;
  }
  return static_cast<std::size_t>(row);
}

bool is_hermitian(const ApproxMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = m.cwiseAbs().maxCoeff();
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return skew <= tol.abs_eps + tol.rel_eps * scale;
}

EigenResult hermitian_eigen(const ApproxMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "eigendecomposition of a non-square matrix");
  if (!is_hermitian(m, tol)) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  const Eigen::Index n = m.rows();
  ApproxMatrix a = (m + m.adjoint()) / 2.0;
  ApproxMatrix v = ApproxMatrix::Identity(n, n);
  const double scale = a.norm();

  constexpr int kMaxSweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= 1e-15 * scale || off == 0.0) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const ApproxComplex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const ApproxComplex phase_conj = std::conj(apq / r);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
        const double t = theta == 0.0 ? 1.0
                                      : std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
        const ApproxComplex j00 = c, j01 = s, j10 = -s * phase_conj, j11 = c * phase_conj;
        for (Eigen::Index k = 0; k < n; ++k) {
          const ApproxComplex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * j00 + akq * j10;
          a(k, q) = akp * j01 + akq * j11;
          const ApproxComplex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * j00 + vkq * j10;
          v(k, q) = vkp * j01 + vkq * j11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const ApproxComplex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
          a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweeps exhausted (100)");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });

  EigenResult result;
  result.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    result.eigenvalues.push_back(a(src, src).real());
    result.eigenvectors.col(k) = v.col(src);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double res =
        (m * result.eigenvectors.col(k) - result.eigenvalues[static_cast<std::size_t>(k)] * result.eigenvectors.col(k))
            .norm();
    result.residual = std::max(result.residual, res);
  }
  return result;
}

bool psd_check(const ApproxMatrix& m, const Tolerance& tol) {
  const EigenResult eig = hermitian_eigen(m, tol);
  if (eig.eigenvalues.empty()) return true;
  double norm = 0.0;
  for (double lambda : eig.eigenvalues) norm = std::max(norm, std::abs(lambda));
  return eig.eigenvalues.back() >= -tol.eig_cutoff * norm;
}

bool psd_check(const ExactMatrix& m, const Tolerance& tol) { return psd_check(to_approx(m), tol); }

ApproxMatrix to_approx(const ExactMatrix& m) {
  return m.unaryExpr([](const ExactComplex& z) { return to_approx(z); });
}

ApproxVector to_approx(const ExactVector& v) {
  return v.unaryExpr([](const ExactComplex& z) { return to_approx(z); });
}

ExactMatrix exact_from(const ApproxMatrix& m) {
  return m.unaryExpr([](const ApproxComplex& z) { return exact_from(z); });
}

ExactVector exact_from(const ApproxVector& v) {
  return v.unaryExpr([](const ApproxComplex& z) { return exact_from(z); });
}

}  // namespace detvar
