#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monowave {

enum class ErrorKind {
  kDomain,
  kUnsupportedDimension,
  kDegenerateOrder,
  kInvalidSpec,
  kResolution,
  kNonManifold,
  kOpenMesh,
  kBoundary,
  kNonProbability,
  kInsufficientData,
  kCutoffTooSmall,
  kNoComponent,
  kInsufficientDirections,
  kValidation,
  kToleranceBreach,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// 2 validation, 3 tolerance breach, 4 I/O.
int exit_code(ErrorKind kind);

}  // namespace monowave
