#include "roomdepth/maps.h"

#include <algorithm>
#include <cmath>

namespace roomdepth {

void DepthTag::validate(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "depth value at index " + std::to_string(i) +
                      " is negative or non-finite");
    }
  }
}

void SegTag::validate(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "segmentation value at index " + std::to_string(i) + " outside [0, 1]");
    }
  }
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + ": grids differ (" + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()) + ")");
  }
}

double median_in_place(std::vector<double>& values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "median of an empty set");
  }
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace roomdepth
