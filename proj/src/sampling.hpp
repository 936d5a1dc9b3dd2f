#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "detvar/variety.hpp"

namespace detvar::detail {

/// Points of the locus cut out by `equations` that also lie on V; may
/// return fewer than `count`.
std::vector<SamplePoint> sample_system(const Variety& v, std::span<const Poly> equations, std::size_t codim,
                                       std::size_t count, std::uint64_t seed, const Tolerance& tol);

/// 1 when the generators restricted to random lines share a root, 2 when
/// random planes meet V, 0 when neither is observed.
std::size_t detect_codim(const Variety& v, std::uint64_t seed, const Tolerance& tol);

/// Sampling of V itself; may return fewer than `count`.
std::vector<SamplePoint> sample_variety(const Variety& v, std::size_t count, std::uint64_t seed,
                                       const Tolerance& tol);

struct LinearSplit {
  std::vector<LinearForm> forms;  // hyperplanes contained in V, with multiplicity
  std::vector<Poly> residual;     // generators with those factors divided out
  bool nonlinear_common_factor = false;
};

/// Divides out every hyperplane shared by all generators. Candidates come
/// from gradients at line-gcd roots, rounded to small-denominator Gaussian
/// rationals, and are accepted only after exact division.
LinearSplit split_common_hyperplanes(std::span<const Poly> generators, std::size_t m, std::uint64_t seed,
                                     const Tolerance& tol);

std::vector<Poly> nonzero_generators(const Variety& v);

}  // namespace detvar::detail
