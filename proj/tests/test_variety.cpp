#include <random>

#include "doctest.h"
#include "detvar/variety.hpp"
#include "detvar/worked_examples.hpp"

using namespace detvar;

namespace {

Poly var(std::size_t i) { return Poly::variable(3, i); }

Poly hesse_cubic(const ExactComplex& t3) {
  const Poly x = var(0), y = var(1), z = var(2);
  return t3 * x * x * x + y * y * y + z * z * z - (t3 + ExactComplex(2)) * x * y * z;
}

bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a * b.leading_coefficient() == b * a.leading_coefficient();
}

std::vector<ExactComplex> random_gaussian_point(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<ExactComplex> p(m);
  do {
    for (auto& c : p) {
      const int re = d(rng);
      c = ExactComplex(re, d(rng));
    }
  } while (std::all_of(p.begin(), p.end(), [](const ExactComplex& c) { return c.is_zero(); }));
  return p;
}

}  // namespace

TEST_CASE("pencil of the cubic family matches the displayed matrix") {
  const ExactState s = build_example(2, 3, 3, "2");
  const PencilMatrix p = pencil_matrix(s, Side::A);
  CHECK(p.rows == 3);
  CHECK(p.cols == 3);
  const PolyMatrix f = p.to_poly_matrix();
  const Poly x = var(0), y = var(1), z = var(2);
  const Poly expected[3][3] = {{ExactComplex(8) * x, z, y}, {y, x, z}, {z, y, x}};
  for (Eigen::Index k = 0; k < 3; ++k)
    for (Eigen::Index l = 0; l < 3; ++l) CHECK(f(k, l) == expected[k][l]);
}

TEST_CASE("cubic family generator for several parameters") {
  for (const char* t : {"2", "-3", "3w", "1/2"}) {
    const auto param = parse_cube_parameter(t);
    const Variety v = build_variety(cubic_family_state(param));
    REQUIRE(v.nonzero_generator_count() == 1);
    const auto g = essential_generator(v);
    REQUIRE(g);
    CHECK(proportional(*g, hesse_cubic(param.t_cubed)));
  }
  CHECK_THROWS_AS(parse_cube_parameter("0"), Error);
  CHECK_THROWS_AS(parse_cube_parameter("w"), Error);
}

TEST_CASE("exact membership") {
  const Variety v = build_variety(build_example(2));
  const std::vector<ExactComplex> on{0, 1, -1};
  const std::vector<ExactComplex> off{1, 0, 0};
  CHECK(membership(v, on).member);
  CHECK_FALSE(membership(v, off).member);
  const std::vector<ApproxComplex> approx_on{0.0, 1.0, -1.0};
  const auto m = membership(v, approx_on);
  CHECK(m.member);
  CHECK(m.generator_residual == 0.0);
  CHECK(m.hermitian_residual == 0.0);
}

TEST_CASE("minors and Hermitian determinant agree at random points") {
  std::mt19937_64 rng(7);
  for (int which : {1, 2, 3}) {
    const Variety v = build_variety(build_example(which));
    for (int k = 0; k < 40; ++k) {
      const auto p = random_gaussian_point(rng, v.m);
      CHECK_NOTHROW(membership(v, p));
    }
  }
  const Variety v = build_variety(build_example(2));
  for (int k = 1; k <= 5; ++k) {
    const ExactComplex c(k, 2 - k);
    const std::vector<ExactComplex> p{0, c, -c};
    CHECK(membership(v, p).member);
  }
}

TEST_CASE("normalization picks the first largest coordinate") {
  const std::vector<ApproxComplex> p{{0.0, 2.0}, 1.0, {-2.0, 0.0}};
  const auto n = normalize_projective(p);
  CHECK(n[0] == ApproxComplex(1.0, 0.0));
  CHECK(std::abs(n[2] - ApproxComplex(0.0, 1.0)) < 1e-15);
  const std::vector<ApproxComplex> zero{0.0, 0.0};
  CHECK_THROWS_AS(normalize_projective(zero), Error);
}

TEST_CASE("sampled points of the t=2 cubic pass membership") {
  const Variety v = build_variety(build_example(2));
  const auto points = sample_points(v, 50, 42);
  CHECK(points.size() == 50);
  for (const auto& p : points) {
    CHECK(membership(v, p.point).member);
    const auto h = tangent_form(v, p);
    double nrm = 0.0;
    for (const auto& c : h.coefficients) nrm += std::norm(c);
    CHECK(nrm > 0.0);
    CHECK(std::abs(h.evaluate(p.point)) < 1e-8);
  }
}

TEST_CASE("sampling rejects the whole space and reports exhaustion on an empty variety") {
  ExactState product;
  product.m = 2;
  product.n = 2;
  product.ensemble.emplace();
  ExactVector v(4);
  v << 1, 0, 0, 0;
  product.ensemble->push_back({Rational(1), v});
  const Variety full = build_variety(product);
  CHECK(full.full());
  CHECK_THROWS_AS(sample_points(full, 3, 1), Error);
  CHECK(linearity_decide(full).tag == VerdictTag::Full);

  const Variety empty = build_variety(build_example(1));
  try {
    sample_points(empty, 3, 1);
    FAIL("expected SamplingExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SamplingExhausted);
  }
}

TEST_CASE("tangent space at a singular point") {
  const Poly x = var(0), y = var(1);
  const std::vector<Poly> eq{x * y};
  const std::vector<ApproxComplex> corner{0.0, 0.0, 1.0};
  CHECK_THROWS_AS(tangent_space(eq, corner, 1), Error);
  const std::vector<ApproxComplex> smooth{0.0, 0.5, 1.0};
  const auto ts = tangent_space(eq, smooth, 1);
  REQUIRE(ts.forms.size() == 1);
  CHECK(std::abs(std::abs(ts.forms[0].coefficients[0]) - 1.0) < 1e-12);
  CHECK(ts.directions.cols() == 1);
}

TEST_CASE("maximally mixed states have an empty variety") {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 3}, {2, 3}}) {
    const Variety v = build_variety(build_example(1, m, n));
    CHECK(certify_empty(v));
    const auto verdict = linearity_decide(v);
    CHECK(verdict.tag == VerdictTag::Empty);
    CHECK_FALSE(verdict.entangled());
  }
}

TEST_CASE("the t=2 cubic carries a non-linearity witness") {
  const Variety v = build_variety(build_example(2));
  const auto verdict = linearity_decide(v);
  REQUIRE(verdict.tag == VerdictTag::NonlinearWitness);
  CHECK(verdict.entangled());
  REQUIRE(verdict.factors);
  CHECK(verdict.factors->factors.empty());
  CHECK(verdict.factors->residual_certified);
  REQUIRE(verdict.witness);
  CHECK(verdict.points_examined <= 10);
  const auto& w = *verdict.witness;
  CHECK(w.residual > 1e-8);
  const auto check = recheck_witness(v, w);
  CHECK(check.valid);
  CHECK(std::abs(check.probe_residual - w.residual) <= 1e-12);

  const auto again = linearity_decide(v);
  REQUIRE(again.witness);
  CHECK(again.witness->probe == w.probe);
}

TEST_CASE("the Hesse-degenerate member splits into lines") {
  // t^3 = 1 gives x^3 + y^3 + z^3 - 3xyz.
  const Variety v = build_variety(build_example(2, 3, 3, "1"));
  const auto verdict = linearity_decide(v);
  CHECK(verdict.tag == VerdictTag::LinearUnion);
  CHECK(verdict.forms.size() == 1);
  CHECK(verdict.approx_forms.size() == 2);
}

TEST_CASE("separable states give unions of linear spaces") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const ExactState s = random_separable_state(3, 3, 3, seed);
    const Variety v = build_variety(s);
    const auto verdict = linearity_decide(v);
    CHECK(verdict.tag == VerdictTag::LinearUnion);
    REQUIRE(verdict.factors);
    CHECK(verdict.factors->splits());
    CHECK(verdict.factors->product() == *essential_generator(v));
  }
  const Variety big = build_variety(random_separable_state(3, 3, 9, 11));
  CHECK_FALSE(linearity_decide(big).entangled());
}

TEST_CASE("a witness does not validate against a different variety") {
  const Variety v = build_variety(build_example(2));
  const auto verdict = linearity_decide(v);
  REQUIRE(verdict.witness);
  const Variety other = build_variety(build_example(2, 3, 3, "-3"));
  CHECK_FALSE(recheck_witness(other, *verdict.witness).valid);
}

TEST_CASE("the rank 7 PPT state has seven sextic generators") {
  const Variety v = build_variety(build_example(3));
  CHECK(v.m == 4);
  CHECK(v.n == 6);
  CHECK(v.t == 7);
  CHECK(v.generators.size() == 7);
  for (const auto& g : v.generators) {
    CHECK(g.is_homogeneous());
    CHECK(g.total_degree() == 6);
  }
  CHECK_FALSE(essential_generator(v));
}

TEST_CASE("local unitary covariance") {
  const ApproxState s = random_mixed_state(3, 3, 3, 5);
  LocalUnitaryPair id{ApproxMatrix::Identity(3, 3), ApproxMatrix::Identity(3, 3)};
  CHECK(verify_lu_covariance(s, id, 5, 1).pass);
  const auto u = random_local_unitary(3, 3, 9);
  const auto res = verify_lu_covariance(s, u, 5, 1);
  CHECK(res.pass);
  CHECK(res.checked == 10);
  CHECK(res.max_residual < 1e-8);

  LocalUnitaryPair skew = u;
  skew.ua(0, 1) += 0.5;
  CHECK_FALSE(verify_lu_covariance(s, skew, 5, 1).pass);
}

TEST_CASE("the minors of the rank 7 PPT state share two planes and no witness exists") {
  const Variety v = build_variety(build_example(3));
  const auto verdict = linearity_decide(v);
  CHECK_FALSE(verdict.entangled());
  CHECK(verdict.tag == VerdictTag::Inconclusive);
  REQUIRE(verdict.forms.size() == 2);
  const LinearForm p1{{1, -1, 0, 1}, 0};
  const LinearForm p2{{1, Rational(-1, 2), 0, Rational(1, 2)}, 0};
  const auto has = [&](const LinearForm& f) {
    return std::find(verdict.forms.begin(), verdict.forms.end(), f) != verdict.forms.end();
  };
  CHECK(has(p1));
  CHECK(has(p2));
  for (const auto& g : v.generators) {
    CHECK(try_divide(g, p1.to_poly().promoted(4)));
    CHECK(try_divide(g, p2.to_poly().promoted(4)));
  }
}
