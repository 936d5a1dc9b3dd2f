#include <random>

#include "detvar/factor.hpp"
#include "doctest.h"

using namespace detvar;

namespace {

Poly v(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
Poly k(long c) { return Poly(ExactComplex(c)); }

}  // namespace

TEST_SUITE("factor") {
  TEST_CASE("coordinate factors") {
    const Poly x = v(2, 0), y = v(2, 1);
    const FactorList f = linear_factorization(ExactComplex(3) * x * x * y);
    CHECK(f.factors.size() == 3);
    CHECK(f.splits());
    CHECK(f.unit == ExactComplex(3));
    CHECK(f.product() == ExactComplex(3) * x * x * y);
  }

  TEST_CASE("x^3 + y^3 + z^3 - 3xyz") {
    const Poly x = v(3, 0), y = v(3, 1), z = v(3, 2);
    const Poly p = pow(x, 3) + pow(y, 3) + pow(z, 3) - k(3) * x * y * z;
    const FactorList f = linear_factorization(p);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == LinearForm{{1, 1, 1}, 0});
    CHECK(f.residual.total_degree() == 2);
    CHECK(f.residual_certified);
    CHECK(f.product() == p);
    REQUIRE(f.approx_split.size() == 2);
    const ApproxComplex w = std::polar(1.0, 2.0 * M_PI / 3.0);
    for (const auto& form : f.approx_split) {
      const bool omega = std::abs(form.coefficients[1] - w) < 1e-8 && std::abs(form.coefficients[2] - w * w) < 1e-8;
      const bool omega2 = std::abs(form.coefficients[1] - w * w) < 1e-8 && std::abs(form.coefficients[2] - w) < 1e-8;
      CHECK((omega || omega2));
    }
  }

  TEST_CASE("products of Gaussian-rational forms split exactly") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 15; ++trial) {
      Poly p = Poly::constant(3, ExactComplex(d(rng) == 0 ? 2 : 5, 1));
      const int degree = 1 + trial % 6;
      for (int j = 0; j < degree; ++j) {
        LinearForm f{{ExactComplex(d(rng), d(rng)), ExactComplex(d(rng)), ExactComplex(Rational(d(rng), 2), d(rng))}, 0};
        if (f.is_zero()) f.coefficients[0] = 1;
        p *= f.to_poly();
      }
      const FactorList fl = linear_factorization(p);
      CHECK(fl.splits());
      CHECK(fl.factors.size() == static_cast<std::size_t>(degree));
      CHECK(fl.product() == p);
    }
  }

  TEST_CASE("irreducible affine cubic") {
    const Poly x = v(2, 0), y = v(2, 1);
    const Poly g = -k(2) * pow(x, 3) - k(2) * x * x * y + x * x - k(6) * x * y + k(3) * x - k(4) * y * y + k(4) * y - k(1);
    const FactorList f = linear_factorization(g);
    CHECK(f.factors.empty());
    CHECK(f.residual_certified);
    CHECK_FALSE(f.certificate.empty());
    CHECK(f.product() == g);
  }

  TEST_CASE("reducible affine cubic") {
    const Poly x = v(2, 0), y = v(2, 1);
    const Poly p = (x - y + k(1)) * (x * x + y * y - k(1));
    const FactorList f = linear_factorization(p);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == LinearForm{{1, -1}, 1});
    CHECK(f.product() == p);
    CHECK(f.residual_certified);
  }

  TEST_CASE("unsupported shapes") {
    CHECK_THROWS_AS(linear_factorization(pow(v(4, 0), 2) + pow(v(4, 3), 2)), Error);
    CHECK_THROWS_AS(linear_factorization(pow(v(3, 0), 7)), Error);
    CHECK_THROWS_AS(linear_factorization(pow(v(2, 0), 4) + v(2, 1)), Error);
  }
}
