#include "monowave/error.hpp"

namespace monowave {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::kDegenerateOrder: return "degenerate-order";
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kResolution: return "resolution";
    case ErrorKind::kNonManifold: return "non-manifold";
    case ErrorKind::kOpenMesh: return "open-mesh";
    case ErrorKind::kBoundary: return "boundary";
    case ErrorKind::kNonProbability: return "non-probability";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kCutoffTooSmall: return "cutoff-too-small";
    case ErrorKind::kNoComponent: return "no-component";
    case ErrorKind::kInsufficientDirections: return "insufficient-directions";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kToleranceBreach: return "tolerance-breach";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message),
      kind_(kind) {}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return 4;
    case ErrorKind::kToleranceBreach:
    case ErrorKind::kInsufficientDirections:
      return 3;
    default:
      return 2;
  }
}

}  // namespace monowave
