#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roomdepth {

enum class ErrorCode {
  kDomain,
  kInvalidArgument,
  kShapeMismatch,
  kTooFewCorners,
  kNonSimplePolygon,
  kNoValidColumns,
  kNoValidPixels,
  kIo,
  kPfmBadMagic,
  kPfmBadHeader,
  kPfmTruncated,
  kParse,
};

// Stable, machine-readable identifier for an error code ("domain",
// "pfm_truncated", ...). Used verbatim in CLI error lines.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace roomdepth
