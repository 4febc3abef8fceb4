#include "ptd/error.hpp"

namespace ptd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::OutsideBall: return "OutsideBall";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotDistribution: return "NotDistribution";
    case ErrorCode::ElementNotPositive: return "ElementNotPositive";
    case ErrorCode::CompletenessViolated: return "CompletenessViolated";
    case ErrorCode::SingularNormalizer: return "SingularNormalizer";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TraceIncreasing: return "TraceIncreasing";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::OracleReturnedInvalidState: return "OracleReturnedInvalidState";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<double> magnitude, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      magnitude_(magnitude),
      index_(index) {}

}  // namespace ptd
