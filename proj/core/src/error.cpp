#include "ulik/error.hpp"

namespace ulik {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kInvalidGeometry: return "InvalidGeometry";
    case Errc::kEmptyRegion: return "EmptyRegion";
    case Errc::kUnboundedRegion: return "UnboundedRegion";
    case Errc::kDegenerateGeometry: return "DegenerateGeometry";
    case Errc::kNonpositiveDistance: return "NonpositiveDistance";
    case Errc::kNonpositiveFading: return "NonpositiveFading";
    case Errc::kNonpositiveValue: return "NonpositiveValue";
    case Errc::kZeroVariance: return "ZeroVariance";
    case Errc::kUnsupportedOrder: return "UnsupportedOrder";
    case Errc::kInvalidDesignPoints: return "InvalidDesignPoints";
    case Errc::kDomainMismatch: return "DomainMismatch";
    case Errc::kSchemaError: return "SchemaError";
    case Errc::kValidationError: return "ValidationError";
    case Errc::kPlacementFailure: return "PlacementFailure";
    case Errc::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ulik
