#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "detvar/io.hpp"

namespace detvar {

struct AnalyzeOptions {
  std::vector<Side> sides{Side::A};
  WitnessOptions witness;
  bool timing = false;
};

/// Full pipeline on a parsed state; `digest` identifies the input bytes.
Json analyze_state(const StateFile& f, const std::string& digest, const AnalyzeOptions& opt = {});
Json analyze_file(const std::string& path, const AnalyzeOptions& opt = {});

struct CompareOptions {
  double spectral_tol = 1e-10;
  Tolerance tol;
};

/// Spectra, local spectra and entropies, plus the moduli comparison when both
/// side A varieties are Hesse cubics. Throws DimensionMismatch.
Json compare_states(const StateFile& a, const StateFile& b, const CompareOptions& opt = {});

/// 1, 2 or 3, with the analysis of the built state. Example 3 adds the
/// symbolic recomputation.
Json repro_example(int which, std::string_view t, std::size_t m, std::size_t n, const AnalyzeOptions& opt = {});

struct TrialCount {
  std::size_t trials = 0;
  std::size_t passed = 0;
  double max_residual = 0.0;
};

struct SeparableCount {
  std::size_t trials = 0;
  std::size_t nonlinear = 0;      // NonlinearWitness outcomes
  std::size_t hypersurface = 0;   // square pencils
  std::size_t split_exactly = 0;  // of those, factor lists that re-multiply to the generator
};

struct PropertySummary {
  std::size_t m = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  TrialCount covariance;
  TrialCount negative_control;  // passed counts trials that were rejected
  SeparableCount separable;

  bool all_pass() const;
};

/// Local unitary covariance on random rank-n states; random non-unitary maps.
TrialCount covariance_trials(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed, bool unitary = true);
/// Separable states with n or n + 1 product terms.
SeparableCount separable_trials(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed);
PropertySummary property_suite(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed);
Json to_json(const PropertySummary& s);

/// 2 input error, 3 internal inconsistency, 4 resource budget exceeded.
int exit_code_for(ErrorCode code) noexcept;
Json error_body(const Error& e);

}  // namespace detvar
