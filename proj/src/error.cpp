#include "detvar/error.hpp"

namespace detvar {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::MissingEnsemble: return "MissingEnsemble";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadDims: return "BadDims";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::InconsistentRepresentations: return "InconsistentRepresentations";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NotHesseShape: return "NotHesseShape";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SymbolicMismatch: return "SymbolicMismatch";
    case ErrorCode::InternalContradiction: return "InternalContradiction";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace detvar
