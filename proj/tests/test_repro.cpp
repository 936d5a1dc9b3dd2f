#include "doctest.h"
#include "detvar/repro.hpp"

using namespace detvar;

TEST_CASE("recomputation of the rank 7 PPT example") {
  const auto r = repro_ppt_example();
  CHECK(r.partial_transpose_invariant);
  CHECK(r.pencil_mismatches.empty());
  CHECK(r.chart_pencil_mismatches.empty());
  REQUIRE(r.f2_cofactor);
  CHECK(r.f2_cofactor->total_degree() == 2);

  // The printed cofactor lacks the s3 monomial.
  CHECK_FALSE(r.f2_cofactor_vs_printed.equal);
  CHECK(r.f2_cofactor_vs_printed.difference == Poly::variable(3, 2));

  CHECK(r.g_sign == -1);
  CHECK(r.g == -printed_g());
  CHECK(r.g_has_no_linear_factor);
  CHECK(r.steps_hold());
}

TEST_CASE("the chart component lies in a plane of the variety") {
  const auto r = repro_ppt_example();
  const LinearForm plane{{1, Rational(-1, 2), 0, Rational(1, 2)}, 0};
  CHECK(r.chart_plane == plane);
  CHECK(r.chart_plane_in_variety);
  CHECK(std::find(r.common_planes.begin(), r.common_planes.end(), plane) != r.common_planes.end());
  CHECK(r.component_point_in_variety);
  CHECK(r.component_verdict.tag == VerdictTag::Inconclusive);
  CHECK_FALSE(r.component_verdict.witness);
  CHECK(r.component_verdict.points_examined > 0);
}
