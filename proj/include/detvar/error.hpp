#pragma once

#include <stdexcept>
#include <string>

namespace detvar {

enum class ErrorCode {
  DivisionByZero,
  NonSquare,
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  ArityMismatch,
  BadOrder,
  ZeroDirection,
  DegenerateLeadingCoefficient,
  UnsupportedShape,
  MissingEnsemble,
  NotAState,
  IndexOutOfRange,
  BadDims,
  BadParams,
  InconsistentRepresentations,
  SamplingExhausted,
  SingularPoint,
  NotHesseShape,
  ParseError,
  SymbolicMismatch,
  InternalContradiction,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace detvar
