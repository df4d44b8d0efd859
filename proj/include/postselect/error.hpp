#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace postselect {

// Domain error families. The CLI reports these by name with exit status 2.
enum class ErrorCode {
  NotHermitian,
  NonFinite,
  NotOrthonormal,
  NotPSD,
  ZeroOperator,
  NotContracting,
  NotUnitary,
  NotNormalized,
  NotUnitaryMember,
  BadWeights,
  DimensionMismatch,
  NotGeneralPosition,
  SingularConfiguration,
  BadOptions,
  WrongDimension,
  NotBorder,
  WrongDomain,
  InfiniteRangePoint,
  DegenerateGrid,
  InvalidSuite,
  NotDensityMatrix,
  NotTracePreserving,
  MissingSeed,
  SingularMatrix,
  ZeroVector,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace postselect
