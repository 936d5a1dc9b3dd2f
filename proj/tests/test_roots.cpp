#include <random>

#include "detvar/roots.hpp"
#include "doctest.h"

using namespace detvar;

namespace {

bool contains_root(const std::vector<ApproxComplex>& roots, ApproxComplex z) {
  return std::any_of(roots.begin(), roots.end(), [&](const ApproxComplex& r) { return std::abs(r - z) < 1e-9; });
}

ExactUniPoly from_roots(const std::vector<ExactComplex>& roots) {
  ExactUniPoly p(std::vector<ExactComplex>{1});
  for (const auto& r : roots) p = p * ExactUniPoly(std::vector<ExactComplex>{-r, 1});
  return p;
}

}  // namespace

TEST_SUITE("roots") {
  TEST_CASE("univariate arithmetic") {
    const ExactUniPoly a = from_roots({1, 2, 2, ExactComplex(0, 1)});
    const ExactUniPoly b = from_roots({2, 3});
    CHECK(gcd(a, b) == from_roots({2}));
    CHECK(squarefree_part(a) == from_roots({1, 2, ExactComplex(0, 1)}));
    const auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }

  TEST_CASE("Aberth on simple polynomials") {
    const auto r = univariate_roots(ApproxUniPoly({1.0, 0.0, 1.0}));
    CHECK(r.size() == 2);
    CHECK(contains_root(r, {0, 1}));
    CHECK(contains_root(r, {0, -1}));
    const auto cube = univariate_roots(ApproxUniPoly({-1.0, 0.0, 0.0, 1.0}));
    for (int k = 0; k < 3; ++k) CHECK(contains_root(cube, std::polar(1.0, 2.0 * M_PI * k / 3.0)));
    CHECK_THROWS_AS(univariate_roots(ApproxUniPoly({1.0, 1.0, 1e-14})), Error);
    CHECK_THROWS_AS(univariate_roots(ApproxUniPoly({1.0})), Error);
  }

  TEST_CASE("restriction to a line") {
    const Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    const std::vector<ExactComplex> zero{0, 0}, diag{1, 1};
    CHECK(restrict_to_line(x * x + y * y, zero, diag) == ExactUniPoly({0, 0, 2}));
    CHECK(restrict_to_line(Poly::constant(2, 5), zero, diag).degree() == 0);
    CHECK_THROWS_AS(restrict_to_line(x, zero, zero), Error);
  }

  TEST_CASE("cubic restricted to random lines") {
    const Poly r1 = Poly::variable(3, 0), r2 = Poly::variable(3, 1), r3 = Poly::variable(3, 2);
    const Poly cubic = ExactComplex(8) * pow(r1, 3) + pow(r2, 3) + pow(r3, 3) - ExactComplex(10) * r1 * r2 * r3;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<ExactComplex> base(3), dir(3);
      for (auto& b : base) b = ExactComplex(d(rng), d(rng));
      for (auto& v : dir) v = ExactComplex(d(rng), d(rng));
      const ExactUniPoly line = restrict_to_line(cubic, base, dir);
      if (line.degree() < 1) continue;
      CHECK(line.degree() <= 3);
      for (const auto& s : univariate_roots(to_approx(line))) {
        std::vector<ApproxComplex> point(3);
        double norm = 0.0;
        for (int i = 0; i < 3; ++i) {
          point[static_cast<std::size_t>(i)] = to_approx(base[static_cast<std::size_t>(i)]) + s * to_approx(dir[static_cast<std::size_t>(i)]);
          norm = std::max(norm, std::abs(point[static_cast<std::size_t>(i)]));
        }
        for (auto& c : point) c /= norm;
        CHECK(std::abs(cubic.evaluate(point)) < 1e-8);
      }
    }
  }

  TEST_CASE("Gaussian rational roots") {
    const ExactComplex half{Rational(1, 2)}, gauss{Rational(-2, 3), Rational(5, 7)};
    const ExactUniPoly p = from_roots({half, half, gauss, 3}) * ExactUniPoly({1, 0, 1, 1});
    const GaussianRoots g = gaussian_rational_roots(p);
    CHECK(g.complete);
    CHECK(g.roots.size() == 3);
    for (const auto& r : {half, gauss, ExactComplex(3)})
      CHECK(std::find(g.roots.begin(), g.roots.end(), r) != g.roots.end());

    // x^2 + x + 1 has only the primitive cube roots of unity, which are not Gaussian rational.
    const GaussianRoots none = gaussian_rational_roots(ExactUniPoly({1, 1, 1}));
    CHECK(none.complete);
    CHECK(none.roots.empty());

    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 30);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<ExactComplex> roots;
      for (int k = 0; k < 4; ++k) roots.emplace_back(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
      const GaussianRoots found = gaussian_rational_roots(from_roots(roots) * ExactUniPoly({2, 0, 1}));
      CHECK(found.complete);
      for (const auto& r : roots) CHECK(std::find(found.roots.begin(), found.roots.end(), r) != found.roots.end());
    }
  }
}
