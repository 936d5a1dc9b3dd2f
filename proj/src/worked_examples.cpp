#include "detvar/worked_examples.hpp"

namespace detvar {

ExactState maximally_mixed_state(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw Error(ErrorCode::BadParams, "dimensions must be at least 1");
  ExactState s;
  s.m = m;
  s.n = n;
  s.label = "maximally mixed";
  s.ensemble.emplace();
  const auto dim = static_cast<Eigen::Index>(m * n);
  const Rational w(1, static_cast<long>(m * n));
  for (Eigen::Index k = 0; k < dim; ++k) {
    ExactVector e = ExactVector::Constant(dim, ExactComplex{});
    e(k) = 1;
    s.ensemble->push_back({w, std::move(e)});
  }
  return s;
}

CubeParameter parse_cube_parameter(std::string_view text) {
  if (text == "3w") return {ExactComplex(27), "3w"};
  Rational t;
  try {
    t = parse_rational(text);
  } catch (const Error&) {
    throw Error(ErrorCode::BadParams, "cube parameter must be a rational or 3w, got '" + std::string(text) + "'");
  }
  if (t.is_zero()) throw Error(ErrorCode::BadParams, "cube parameter must be nonzero");
  return {ExactComplex(t * t * t), std::string(text)};
}

ExactState cubic_family_state(const CubeParameter& t) {
  if (t.t_cubed.is_zero()) throw Error(ErrorCode::BadParams, "cube parameter must be nonzero");
  const auto basis = [](std::initializer_list<std::pair<int, int>> pairs, const ExactComplex& first) {
    ExactVector v = ExactVector::Constant(9, ExactComplex{});
    bool lead = true;
    for (const auto& [i, k] : pairs) {
      v((i - 1) * 3 + (k - 1)) = lead ? first : ExactComplex(1);
      lead = false;
    }
    return v;
  };
  ExactState s;
  s.m = 3;
  s.n = 3;
  s.label = "cubic family t^3=" + to_string(t.t_cubed);
  s.ensemble.emplace();
  ExactVector v1 = basis({{1, 1}, {2, 2}, {3, 3}}, t.t_cubed);
  const Rational w1 = Rational(1) / (3 * v1.squaredNorm());
  s.ensemble->push_back({w1, std::move(v1)});
  s.ensemble->push_back({Rational(1, 9), basis({{1, 2}, {2, 3}, {3, 1}}, 1)});
  s.ensemble->push_back({Rational(1, 9), basis({{1, 3}, {2, 1}, {3, 2}}, 1)});
  return s;
}

std::array<ExactMatrix, 4> ppt_slices() {
  const auto from = [](std::initializer_list<std::initializer_list<int>> rows) {
    ExactMatrix a(6, 7);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
      Eigen::Index j = 0;
      for (int x : row) a(i, j++) = x;
      ++i;
    }
    return a;
  };
  ExactMatrix a4 = ExactMatrix::Constant(6, 7, ExactComplex{});
  for (Eigen::Index i = 0; i < 6; ++i) a4(i, i) = 1;
  return {
      from({{1, 0, 0, 0, 0, 0, 0},
            {0, 1, 0, 0, 0, 0, 0},
            {0, 0, 1, 0, 0, 0, 0},
            {0, 0, 0, 2, 0, 0, 1},
            {0, 0, 0, 0, 2, 0, 0},
            {0, 0, 0, 0, 0, 2, 0}}),
      from({{0, 1, 1, -1, 0, 0, 1},
            {1, 0, 1, 0, 0, 0, 0},
            {1, 1, 0, 0, 0, 0, 0},
            {-1, 0, 0, 0, 1, 1, 0},
            {0, 0, 0, 1, 0, 1, 0},
            {0, 0, 0, 1, 1, 0, 0}}),
      from({{2, 0, 0, 0, 0, 0, 0},
            {0, 1, 1, 0, 0, 0, 0},
            {0, 1, 1, 0, 0, 0, 0},
            {0, 0, 0, 2, 0, 0, 0},
            {0, 0, 0, 0, 1, 1, 0},
            {0, 0, 0, 0, 1, 1, 0}}),
      a4,
  };
}

ExactState ppt_entangled_state() {
  const auto slices = ppt_slices();
  ExactMatrix a(24, 7);
  for (Eigen::Index i = 0; i < 4; ++i) a.middleRows(i * 6, 6) = slices[static_cast<std::size_t>(i)];
  Rational d = 0;
  for (Eigen::Index l = 0; l < a.cols(); ++l) d += a.col(l).squaredNorm();
  ExactState s;
  s.m = 4;
  s.n = 6;
  s.label = "rank 7 PPT state";
  s.ensemble.emplace();
  for (Eigen::Index l = 0; l < a.cols(); ++l) s.ensemble->push_back({Rational(1) / d, a.col(l)});
  return s;
}

ExactState build_example(int which, std::size_t m, std::size_t n, std::string_view t) {
  switch (which) {
    case 1:
      return maximally_mixed_state(m, n);
    case 2:
      return cubic_family_state(parse_cube_parameter(t));
    case 3:
      return ppt_entangled_state();
    default:
      throw Error(ErrorCode::BadParams, "example must be 1, 2 or 3");
  }
}

}  // namespace detvar
