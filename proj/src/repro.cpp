#include "detvar/repro.hpp"

#include "detvar/worked_examples.hpp"
#include "sampling.hpp"

namespace detvar {

namespace {

/// The printed pencil. With primed = true the two column operations are
/// applied as printed, which is polynomial only where r1 = 1.
PolyMatrix printed_pencil(const Poly& r1, const Poly& r2, const Poly& r3, const Poly& r4, bool primed) {
  const ExactComplex two(2), three(3);
  const Poly u1 = r4 + r1 + two * r3;
  const Poly u1p = r4 + r3 + r1;
  const Poly u2 = r4 + two * r3 + two * r1;
  const Poly u2p = r4 + two * r1 + r3;
  const Poly zero = Poly::zero(r1.nvars());
  const Poly v1 = u1 + r2 * r2;
  const Poly v2 = r4 + two * r3 + three * r1;
  const Poly s = r2 + r3;
  PolyMatrix f(6, 7);
  if (!primed) {
    f << u1, r2, r2, -r2, zero, zero, r2,
         r2, u1p, s, zero, zero, zero, zero,
         r2, s, u1p, zero, zero, zero, zero,
         -r2, zero, zero, u2, r2, r2, r1,
         zero, zero, zero, r2, u2p, s, zero,
         zero, zero, zero, r2, s, u2p, zero;
  } else {
    f << v1, r2, r2, zero, zero, zero, r2,
         r2, u1p, s, zero, zero, zero, zero,
         r2, s, u1p, zero, zero, zero, zero,
         zero, zero, zero, v2, r2, r2, r1,
         zero, zero, zero, r2, u2p, s, zero,
         zero, zero, zero, r2, s, u2p, zero;
  }
  return f;
}

std::vector<std::string> mismatches(const PolyMatrix& printed, const PolyMatrix& computed,
                                    std::span<const std::string> names) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < printed.rows(); ++i) {
    for (Eigen::Index j = 0; j < printed.cols(); ++j) {
      if (printed(i, j) == computed(i, j)) continue;
      out.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): printed " +
                    printed(i, j).to_string(names) + ", computed " + computed(i, j).to_string(names));
    }
  }
  return out;
}

/// r1 = 1, r2 = s1, r3 = s2, r4 = s3 - s2 - 2.
std::vector<LinearForm> chart_map() {
  return {
      LinearForm{{0, 0, 0}, 1},
      LinearForm{{1, 0, 0}, 0},
      LinearForm{{0, 1, 0}, 0},
      LinearForm{{0, -1, 1}, -2},
  };
}

/// c1 s1 + c2 s2 + c3 s3 + c0 as a form in r1..r4.
LinearForm homogenize_chart_form(const LinearForm& f) {
  const ExactComplex& c1 = f.coefficients[0];
  const ExactComplex& c2 = f.coefficients[1];
  const ExactComplex& c3 = f.coefficients[2];
  return LinearForm{{f.constant + ExactComplex(2) * c3, c1, c2 + c3, c3}, 0};
}

/// r1^3 g(r2/r1, r3/r1) for a cubic g in (s1, s2).
Poly homogenize_chart_cubic(const Poly& g) {
  Poly out = Poly::zero(4);
  for (const auto& [e, c] : g.terms()) out.add_term({3 - e[0] - e[1], e[0], e[1], 0}, c);
  return out;
}

int sign_against(const Poly& printed, const Poly& computed) {
  if (computed == printed) return 1;
  if (computed == -printed) return -1;
  return 0;
}

const std::vector<std::string> kProjective{"r1", "r2", "r3", "r4"};
const std::vector<std::string> kChart{"s1", "s2", "s3"};

}  // namespace

PolyComparison compare_polys(std::string label, const Poly& printed, const Poly& computed) {
  PolyComparison c;
  c.label = std::move(label);
  c.printed = printed;
  c.computed = computed;
  c.difference = computed - printed;
  c.equal = c.difference.is_zero();
  return c;
}

Poly printed_f2() {
  const Poly s1 = Poly::variable(3, 0), s2 = Poly::variable(3, 1), s3 = Poly::variable(3, 2);
  return (s3 - s1 - s2) * printed_f2_cofactor();
}

Poly printed_f2_cofactor() {
  const Poly s1 = Poly::variable(3, 0), s2 = Poly::variable(3, 1), s3 = Poly::variable(3, 2);
  const ExactComplex two(2);
  return s2 * s2 + s3 * s3 - two * s1 * s1 + two * s2 * s3 + s2 * s1 + s3 * s1 + s1 + s2;
}

Poly printed_g() {
  const Poly s1 = Poly::variable(2, 0), s2 = Poly::variable(2, 1);
  const Poly one = Poly::constant(2, 1);
  return ExactComplex(2) * s1 * s1 * s1 + ExactComplex(2) * s1 * s1 * s2 + ExactComplex(4) * s2 * s2 - s1 * s1 +
         ExactComplex(6) * s1 * s2 - ExactComplex(3) * s1 - ExactComplex(4) * s2 + one;
}

bool PptExampleReport::steps_hold() const {
  return partial_transpose_invariant && pencil_mismatches.empty() && f2_cofactor.has_value() && g_sign != 0 &&
         g_has_no_linear_factor;
}

PptExampleReport repro_ppt_example(const WitnessOptions& opt) {
  PptExampleReport rep;
  const ExactState state = ppt_entangled_state();
  const ExactMatrix rho = density_of(state);
  rep.partial_transpose_invariant = partial_transpose<ExactComplex>(rho, state.m, state.n) == rho;

  const Variety v = build_variety(state);
  rep.pencil = v.pencil.to_poly_matrix();
  for (Eigen::Index i = 0; i < rep.pencil.rows(); ++i)
    for (Eigen::Index j = 0; j < rep.pencil.cols(); ++j) rep.pencil(i, j) = rep.pencil(i, j).promoted(4);
  const Poly r1 = Poly::variable(4, 0), r2 = Poly::variable(4, 1), r3 = Poly::variable(4, 2), r4 = Poly::variable(4, 3);
  rep.pencil_mismatches = mismatches(printed_pencil(r1, r2, r3, r4, false), rep.pencil, kProjective);

  // Column 7 added to column 4, and s1 = r2/r1 times column 7 added to column 1.
  const auto map = chart_map();
  PolyMatrix chart(6, 7);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 7; ++j) chart(i, j) = substitute_affine(rep.pencil(i, j), map);
  const Poly s1 = Poly::variable(3, 0), s2 = Poly::variable(3, 1), s3 = Poly::variable(3, 2);
  for (Eigen::Index i = 0; i < 6; ++i) {
    chart(i, 3) = chart(i, 3) + chart(i, 6);
    chart(i, 0) = chart(i, 0) + s1 * chart(i, 6);
  }
  rep.chart_pencil = chart;
  const Poly one = Poly::constant(3, 1);
  rep.chart_pencil_mismatches =
      mismatches(printed_pencil(one, s1, s2, s3 - s2 - ExactComplex(2) * one, true), chart, kChart);

  rep.f1 = symbolic_det(chart.block(0, 0, 3, 3));
  rep.f2 = symbolic_det(chart.block(3, 3, 3, 3));
  rep.f2_linear_factor = LinearForm{{-1, -1, 1}, 0};
  rep.f2_cofactor = try_divide(rep.f2, rep.f2_linear_factor.to_poly().promoted(3));
  rep.f2_vs_printed = compare_polys("f2", printed_f2(), rep.f2);
  rep.f2_cofactor_vs_printed =
      compare_polys("f2 / (s3 - s1 - s2)", printed_f2_cofactor(), rep.f2_cofactor.value_or(Poly::zero(3)));

  const std::vector<LinearForm> on_plane{LinearForm{{1, 0}, 0}, LinearForm{{0, 1}, 0}, LinearForm{{1, 1}, 0}};
  rep.g = substitute_affine(rep.f1, on_plane);
  rep.g_sign = sign_against(printed_g(), rep.g);
  rep.g_vs_printed = compare_polys("g", printed_g(), rep.g);
  rep.g_factors = linear_factorization(rep.g, opt.tol);
  rep.g_has_no_linear_factor = rep.g_factors.factors.empty() && rep.g_factors.residual_certified;

  const auto gens = detail::nonzero_generators(v);
  rep.common_planes = detail::split_common_hyperplanes(gens, v.m, opt.seed, opt.tol).forms;
  rep.chart_plane = homogenize_chart_form(rep.f2_linear_factor).normalized();
  const Poly plane = rep.chart_plane.to_poly().promoted(4);
  rep.chart_plane_in_variety =
      std::all_of(gens.begin(), gens.end(), [&](const Poly& g) { return try_divide(g, plane).has_value(); });

  const Poly cubic = homogenize_chart_cubic(rep.g);
  rep.component_point = {1, 0, Rational(1, 2), -2};
  if (!plane.evaluate(rep.component_point).is_zero() || !cubic.evaluate(rep.component_point).is_zero()) {
    throw Error(ErrorCode::SymbolicMismatch, "reference point is not on the chart component");
  }
  rep.component_point_in_variety = membership(v, rep.component_point).member;

  const std::vector<Poly> component{plane, cubic};
  std::size_t examined = 0;
  auto w = witness_on_component(v, component, 2, "chart component", opt, &examined);
  auto& cv = rep.component_verdict;
  cv.method = "tangent probe";
  cv.points_examined = examined;
  if (w) {
    cv.tag = VerdictTag::NonlinearWitness;
    cv.reason = "tangent direction at a smooth point leaves the variety";
    cv.witness = std::move(w);
  } else {
    cv.tag = VerdictTag::Inconclusive;
    cv.reason = rep.chart_plane_in_variety
                    ? "the component lies in the plane " + rep.chart_plane.to_string(kProjective) +
                          ", which is contained in the variety"
                    : "no tangent probe left the variety";
  }
  return rep;
}

}  // namespace detvar
