#include <random>

#include "detvar/states.hpp"
#include "doctest.h"

using namespace detvar;

namespace {

ExactState maximally_mixed(std::size_t m, std::size_t n) {
  ExactState s;
  s.m = m;
  s.n = n;
  s.ensemble.emplace();
  const auto dim = static_cast<Eigen::Index>(m * n);
  for (Eigen::Index k = 0; k < dim; ++k) {
    ExactVector e = ExactVector::Constant(dim, ExactComplex{});
    e(k) = 1;
    s.ensemble->push_back({Rational(1, static_cast<long>(m * n)), e});
  }
  return s;
}

ApproxState bell() {
  ApproxState s;
  s.m = s.n = 2;
  ApproxVector v = ApproxVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  s.ensemble.emplace();
  s.ensemble->push_back({1.0, v});
  return s;
}

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("density from ensemble matches summed projectors") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ApproxState s = random_mixed_state(2, 3, 1 + seed % 6, seed);
      ApproxMatrix direct = ApproxMatrix::Zero(6, 6);
      for (const auto& t : *s.ensemble) direct += t.weight * t.vector * t.vector.adjoint();
      CHECK((density_from_ensemble(s) - direct).norm() < 1e-14);
      CHECK_NOTHROW(validate(s));
    }
    const ExactState sep = random_separable_state(2, 3, 4, 9);
    ExactMatrix direct = ExactMatrix::Constant(6, 6, ExactComplex{});
    for (const auto& t : *sep.ensemble) direct += ExactComplex(t.weight) * (t.vector * t.vector.adjoint());
    CHECK(density_from_ensemble(sep) == direct);
    CHECK(trace<ExactComplex>(direct).is_one());
    CHECK_NOTHROW(validate(sep));
  }

  TEST_CASE("maximally mixed state") {
    const ExactState s = maximally_mixed(3, 3);
    const ExactMatrix rho = density_of(s);
    CHECK(rho == ExactMatrix::Identity(9, 9) * ExactComplex(Rational(1, 9)));
    CHECK(block<ExactComplex>(rho, 3, 3, 0, 1) == ExactMatrix::Constant(3, 3, ExactComplex{}));
    CHECK_THROWS_AS(block<ExactComplex>(rho, 3, 3, 3, 0), Error);
    CHECK(ppt_check(s));
    const SpectraReport r = entropy_and_spectra(s);
    CHECK(r.entropies[0] == doctest::Approx(std::log(9.0)));
    const ApproxState e = ensemble_from_density(to_approx(rho), 3, 3);
    CHECK(e.ensemble->size() == 9);
    for (const auto& t : *e.ensemble) CHECK(t.weight == doctest::Approx(1.0 / 9.0));
  }

  TEST_CASE("Bell state is not PPT") {
    CHECK_FALSE(ppt_check(bell()));
    const SpectraReport r = entropy_and_spectra(bell());
    CHECK(r.entropies[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.entropies[1] == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("separable states are PPT") {
    CHECK(ppt_check(random_separable_state(2, 2, 4, 1)));
    CHECK(ppt_check(random_separable_state(3, 3, 9, 5)));
  }

  TEST_CASE("ensemble round trip") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      const ApproxState s = random_mixed_state(3, 3, 1 + seed % 9, seed);
      const ApproxMatrix rho = density_of(s);
      const ApproxState back = ensemble_from_density(rho, 3, 3);
      CHECK(back.ensemble->size() == 1 + seed % 9);
      ApproxState only;
      only.m = only.n = 3;
      only.ensemble = back.ensemble;
      CHECK((density_of(only) - rho).norm() <= 1e-8 * rho.norm());
    }
    ApproxMatrix bad = ApproxMatrix::Identity(4, 4);
    CHECK_THROWS_AS(ensemble_from_density(bad, 2, 2), Error);
  }

  TEST_CASE("local unitaries") {
    const LocalUnitaryPair u = random_local_unitary(3, 3, 7);
    CHECK((u.ua.adjoint() * u.ua - ApproxMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK((u.ub.adjoint() * u.ub - ApproxMatrix::Identity(3, 3)).norm() < 1e-12);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ApproxState s = random_mixed_state(2, 3, 3, seed);
      const LocalUnitaryPair u = random_local_unitary(2, 3, seed + 1000);
      const ApproxState t = apply_local_unitary(s, u);
      const SpectraReport a = entropy_and_spectra(s), b = entropy_and_spectra(t);
      for (std::size_t k = 0; k < a.global.size(); ++k) CHECK(a.global[k] == doctest::Approx(b.global[k]).epsilon(1e-9));
      for (std::size_t k = 0; k < 3; ++k) CHECK(a.entropies[k] == doctest::Approx(b.entropies[k]));
      const ApproxMatrix big = kron<ApproxComplex>(u.ua, u.ub);
      CHECK((density_from_ensemble(t) - big * density_of(s) * big.adjoint()).norm() < 1e-12);
    }
    LocalUnitaryPair identity{ApproxMatrix::Identity(2, 2), ApproxMatrix::Identity(3, 3)};
    const ApproxState s = random_mixed_state(2, 3, 2, 4);
    CHECK((density_of(apply_local_unitary(s, identity)) - density_of(s)).norm() == 0.0);
    CHECK_THROWS_AS(apply_local_unitary(s, random_local_unitary(3, 3, 1)), Error);
  }

  TEST_CASE("block structure") {
    const ExactState s = random_separable_state(3, 2, 5, 3);
    const ExactMatrix rho = density_of(s);
    const ExactMatrix a = ensemble_matrix(s);
    ExactMatrix p = ExactMatrix::Constant(a.cols(), a.cols(), ExactComplex{});
    for (Eigen::Index l = 0; l < a.cols(); ++l) p(l, l) = ExactComplex((*s.ensemble)[static_cast<std::size_t>(l)].weight);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const ExactMatrix ai = a.middleRows(static_cast<Eigen::Index>(2 * i), 2);
        const ExactMatrix aj = a.middleRows(static_cast<Eigen::Index>(2 * j), 2);
        CHECK(block<ExactComplex>(rho, 3, 2, i, j) == ai * p * aj.adjoint());
        CHECK(block<ExactComplex>(rho, 3, 2, i, j).adjoint() == block<ExactComplex>(rho, 3, 2, j, i));
      }
    }
  }

  TEST_CASE("side swap") {
    const ExactState s = random_separable_state(2, 3, 3, 8);
    const ExactState t = swap_sides(s);
    CHECK(t.m == 3);
    CHECK(partial_trace<ExactComplex>(density_of(t), 3, 2, Subsystem::B) ==
          partial_trace<ExactComplex>(density_of(s), 2, 3, Subsystem::A));
  }

  TEST_CASE("bad inputs") {
    CHECK_THROWS_AS(random_mixed_state(0, 2, 1, 1), Error);
    ExactState s = maximally_mixed(2, 2);
    (*s.ensemble)[0].weight = Rational(1, 2);
    CHECK_THROWS_AS(validate(s), Error);
  }
}
