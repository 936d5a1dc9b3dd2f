#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detvar/factor.hpp"
#include "detvar/variety.hpp"

namespace detvar {

struct PolyComparison {
  std::string label;
  Poly printed;
  Poly computed;
  Poly difference;  // computed - printed
  bool equal = false;
};

PolyComparison compare_polys(std::string label, const Poly& printed, const Poly& computed);

/// Symbolic recomputation of the rank 7 PPT example. Chart coordinates are
/// r2' = r2/r1, r3' = r3/r1, r4' = (r4 + r3 + 2 r1)/r1, named s1, s2, s3.
struct PptExampleReport {
  bool partial_transpose_invariant = false;

  PolyMatrix pencil;  // r1 A1 + r2 A2 + r3 A3 + r4 A4
  std::vector<std::string> pencil_mismatches;  // entries differing from the printed matrix
  PolyMatrix chart_pencil;  // after both column operations, in chart coordinates
  std::vector<std::string> chart_pencil_mismatches;

  Poly f1;
  Poly f2;
  LinearForm f2_linear_factor;  // s3 - s1 - s2
  std::optional<Poly> f2_cofactor;
  PolyComparison f2_vs_printed;
  PolyComparison f2_cofactor_vs_printed;

  Poly g;  // f1 at s3 = s1 + s2, in (s1, s2)
  int g_sign = 0;  // +1 or -1 when g = +-printed, 0 otherwise
  PolyComparison g_vs_printed;
  FactorList g_factors;
  bool g_has_no_linear_factor = false;

  /// Hyperplanes dividing every 6x6 minor, homogeneous in r1..r4.
  std::vector<LinearForm> common_planes;
  /// The chart plane s3 = s1 + s2 written homogeneously.
  LinearForm chart_plane;
  bool chart_plane_in_variety = false;
  /// Exact point of the chart component, checked against V.
  std::vector<ExactComplex> component_point;
  bool component_point_in_variety = false;
  VarietyVerdict component_verdict;

  bool steps_hold() const;
};

/// Every intermediate polynomial of the PPT example, recomputed from the
/// four slices. Throws SymbolicMismatch only if an exact identity that must
/// hold by construction fails.
PptExampleReport repro_ppt_example(const WitnessOptions& opt = {});

/// The printed polynomials, in chart variables (s1, s2, s3) or (s1, s2).
Poly printed_f2();
Poly printed_f2_cofactor();
Poly printed_g();

}  // namespace detvar
