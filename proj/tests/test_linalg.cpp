#include <random>

#include <Eigen/Eigenvalues>

#include "detvar/linalg.hpp"
#include "doctest.h"

using namespace detvar;

namespace {

ExactMatrix random_exact_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_int_distribution<int> d(-5, 5);
  ExactMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = ExactComplex(d(rng), d(rng));
  return m;
}

ExactComplex cofactor3(const ExactMatrix& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

ApproxMatrix bell_projector() {
  ApproxMatrix p = ApproxMatrix::Zero(4, 4);
  p(0, 0) = p(0, 3) = p(3, 0) = p(3, 3) = 0.5;
  return p;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("exact determinant") {
    CHECK(det_exact(ExactMatrix::Identity(4, 4)).is_one());
    ExactMatrix pencil(3, 3);
    pencil << 8, 1, 1, 1, 1, 1, 1, 1, 1;
    CHECK(det_exact(pencil).is_zero());
    CHECK_THROWS_AS(det_exact(ExactMatrix(2, 3)), Error);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      ExactMatrix a = random_exact_matrix(rng, 3, 3);
      CHECK(det_exact(a) == cofactor3(a));
      a.row(2) = a.row(0);
      CHECK(det_exact(a).is_zero());
    }
  }

  TEST_CASE("exact rank") {
    CHECK(rank_exact(ExactMatrix::Constant(3, 4, ExactComplex{})) == 0);
    std::mt19937_64 rng(5);
    const ExactMatrix u = random_exact_matrix(rng, 4, 1);
    const ExactMatrix v = random_exact_matrix(rng, 1, 3);
    CHECK(rank_exact(u * v) == 1);
  }

  TEST_CASE("Hermitian eigendecomposition") {
    ApproxMatrix d = ApproxMatrix::Zero(2, 2);
    d(0, 0) = 1;
    d(1, 1) = 2;
    const EigenResult r = hermitian_eigen(d);
    CHECK(r.eigenvalues[0] == doctest::Approx(2));
    CHECK(r.eigenvalues[1] == doctest::Approx(1));
    ApproxMatrix bad = d;
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigen(bad), Error);

    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    for (int size : {1, 3, 9, 24}) {
      ApproxMatrix x(size, size);
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) x(i, j) = {g(rng), g(rng)};
      const ApproxMatrix h = x + x.adjoint();
      const EigenResult e = hermitian_eigen(h);
      Eigen::VectorXd lambda(size);
      for (int k = 0; k < size; ++k) lambda(k) = e.eigenvalues[static_cast<std::size_t>(k)];
      const ApproxMatrix rebuilt = e.eigenvectors * lambda.cast<ApproxComplex>().asDiagonal() * e.eigenvectors.adjoint();
      CHECK((rebuilt - h).norm() <= 1e-8 * h.norm());
      CHECK(e.residual <= 1e-8 * h.norm());
      Eigen::SelfAdjointEigenSolver<ApproxMatrix> oracle(h);
      for (int k = 0; k < size; ++k) CHECK(lambda(k) == doctest::Approx(oracle.eigenvalues()(size - 1 - k)));
    }
  }

  TEST_CASE("partial transpose") {
    const ApproxMatrix pt = partial_transpose<ApproxComplex>(bell_projector(), 2, 2);
    CHECK(hermitian_eigen(pt).eigenvalues.back() == doctest::Approx(-0.5));
    CHECK_FALSE(psd_check(pt));
    CHECK(psd_check(bell_projector()));
    CHECK(psd_check(ApproxMatrix(ApproxMatrix::Zero(3, 3))));
    std::mt19937_64 rng(9);
    const ExactMatrix rho = random_exact_matrix(rng, 6, 6);
    CHECK(partial_transpose<ExactComplex>(partial_transpose<ExactComplex>(rho, 2, 3), 2, 3) == rho);
    const ExactMatrix mixed = ExactMatrix::Identity(9, 9) * ExactComplex(Rational(1, 9));
    CHECK(partial_transpose<ExactComplex>(mixed, 3, 3) == mixed);
    CHECK_THROWS_AS(partial_transpose<ExactComplex>(rho, 2, 2), Error);
  }

  TEST_CASE("partial trace") {
    const ApproxMatrix reduced = partial_trace<ApproxComplex>(bell_projector(), 2, 2, Subsystem::B);
    CHECK((reduced - ApproxMatrix::Identity(2, 2) / 2.0).norm() < 1e-15);
    std::mt19937_64 rng(21);
    const ExactMatrix a = random_exact_matrix(rng, 2, 1);
    const ExactMatrix b = random_exact_matrix(rng, 3, 1);
    const ExactMatrix pa = a * a.adjoint();
    const ExactMatrix pb = b * b.adjoint();
    const ExactMatrix prod = kron<ExactComplex>(pa, pb);
    CHECK(partial_trace<ExactComplex>(prod, 2, 3, Subsystem::B) == pa * trace<ExactComplex>(pb));
    CHECK(partial_trace<ExactComplex>(prod, 2, 3, Subsystem::A) == pb * trace<ExactComplex>(pa));
    const ExactMatrix rho = random_exact_matrix(rng, 6, 6);
    CHECK(trace<ExactComplex>(partial_trace<ExactComplex>(rho, 2, 3, Subsystem::A)) == trace<ExactComplex>(rho));
    CHECK(trace<ExactComplex>(partial_trace<ExactComplex>(rho, 2, 3, Subsystem::B)) == trace<ExactComplex>(rho));
  }
}
