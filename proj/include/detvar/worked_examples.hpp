#pragma once

#include <array>
#include <string>
#include <string_view>

#include "detvar/states.hpp"

namespace detvar {

/// I_{mn} / (mn) as the ensemble of basis vectors.
ExactState maximally_mixed_state(std::size_t m, std::size_t n);

/// Parameter of the cubic family, carried as t^3 (|t|^6 = |t^3|^2).
struct CubeParameter {
  ExactComplex t_cubed;
  std::string label;
};

/// A rational "p/q" gives t^3 = (p/q)^3; "3w" (t = 3 times a primitive cube
/// root of unity) gives t^3 = 27. Throws BadParams on zero or unparsable input.
CubeParameter parse_cube_parameter(std::string_view text);

/// (P_{v1} + P_{v2} + P_{v3}) / 3 on C^3 (x) C^3 with
/// v1 ~ t^3|11> + |22> + |33>, v2 ~ |12> + |23> + |31>, v3 ~ |13> + |21> + |32>.
/// Vectors are kept unnormalized and the weights carry 1/|v|^2.
ExactState cubic_family_state(const CubeParameter& t);

/// The four 6x7 slices of the rank 7 PPT state on C^4 (x) C^6.
std::array<ExactMatrix, 4> ppt_slices();
/// A A^dagger / D with A the 24x7 stack of the slices, D = trace.
ExactState ppt_entangled_state();

/// 1, 2 or 3. Example 1 uses (m, n); example 2 uses `t`. Throws BadParams.
ExactState build_example(int which, std::size_t m = 3, std::size_t n = 3, std::string_view t = "2");

}  // namespace detvar
