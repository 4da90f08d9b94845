#include "roomdepth/error.h"

namespace roomdepth {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kTooFewCorners: return "too_few_corners";
    case ErrorCode::kNonSimplePolygon: return "non_simple_polygon";
    case ErrorCode::kNoValidColumns: return "no_valid_columns";
    case ErrorCode::kNoValidPixels: return "no_valid_pixels";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kPfmBadMagic: return "pfm_bad_magic";
    case ErrorCode::kPfmBadHeader: return "pfm_bad_header";
    case ErrorCode::kPfmTruncated: return "pfm_truncated";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace roomdepth
