#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptd {

// Every failure the library reports carries one of these codes. Codes that
// have a natural magnitude (a residual, the offending eigenvalue, a trace
// deviation) attach it; codes that point at a list element attach the index.
enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NoConvergence,
  NonFinite,
  InvalidRank,
  InvalidDimension,
  NotPositive,
  TraceNotOne,
  OutsideBall,
  WrongDimension,
  DimensionMismatch,
  KOutOfRange,
  LengthMismatch,
  NotDistribution,
  ElementNotPositive,
  CompletenessViolated,
  SingularNormalizer,
  NegativeEntry,
  HypothesisViolated,
  ShapeMismatch,
  TraceIncreasing,
  NotTracePreserving,
  ZeroTrace,
  ParameterOutOfRange,
  UnknownSuite,
  OracleReturnedInvalidState,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> magnitude = std::nullopt,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> magnitude() const noexcept { return magnitude_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<double> magnitude_;
  std::optional<std::size_t> index_;
};

}  // namespace ptd
