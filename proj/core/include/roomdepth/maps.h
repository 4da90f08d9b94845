#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "roomdepth/equirect.h"
#include "roomdepth/error.h"

namespace roomdepth {

// Row-major H x W grid of doubles over an equirectangular GridSpec.
// Tag distinguishes map kinds that must not be mixed up at compile time.
template <typename Tag>
class Raster {
 public:
  explicit Raster(const GridSpec& grid, double fill = 0.0)
      : grid_(grid), values_(grid.pixel_count(), fill) {}

  // Throws Error(kShapeMismatch) if values.size() != W * H, and whatever
  // Tag::validate throws for out-of-domain values.
  Raster(const GridSpec& grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    check_size();
    Tag::validate(values_);
  }

  const GridSpec& grid() const noexcept { return grid_; }
  int width() const noexcept { return grid_.width(); }
  int height() const noexcept { return grid_.height(); }
  std::size_t size() const noexcept { return values_.size(); }

  double at(int row, int col) const {
    return values_[index(row, col)];
  }
  double& at(int row, int col) { return values_[index(row, col)]; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(grid_.width()) +
           static_cast<std::size_t>(col);
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  void check_size() const;

  GridSpec grid_;
  std::vector<double> values_;
};

struct DepthTag {
  // Finite and >= 0; 0 marks an invalid pixel.
  static void validate(std::span<const double> values);
};

struct SegTag {
  // Every value in [0, 1].
  static void validate(std::span<const double> values);
};

// Radial (Euclidean) distance from the camera center, meters.
using DepthMap = Raster<DepthTag>;
// Background probability or binary label per pixel.
using SegMap = Raster<SegTag>;

template <typename Tag>
void Raster<Tag>::check_size() const {
  if (values_.size() != grid_.pixel_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                "raster payload has " + std::to_string(values_.size()) +
                    " values, grid needs " + std::to_string(grid_.pixel_count()));
  }
}

// Throws Error(kShapeMismatch) naming `what` when grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

// Mean of the two middle elements for even sizes. Reorders `values`.
double median_in_place(std::vector<double>& values);

}  // namespace roomdepth
