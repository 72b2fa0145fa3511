#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ulik {

enum class Errc {
  kInvalidArgument,
  kInvalidGeometry,
  kEmptyRegion,
  kUnboundedRegion,
  kDegenerateGeometry,
  kNonpositiveDistance,
  kNonpositiveFading,
  kNonpositiveValue,
  kZeroVariance,
  kUnsupportedOrder,
  kInvalidDesignPoints,
  kDomainMismatch,
  kSchemaError,
  kValidationError,
  kPlacementFailure,
  kIoError,
};

std::string_view errc_name(Errc code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  /// Message without the error-code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace ulik
