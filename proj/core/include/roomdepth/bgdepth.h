#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "roomdepth/layout.h"
#include "roomdepth/maps.h"

namespace roomdepth {

enum class Region : std::uint8_t { kCeiling, kWall, kFloor };

class RegionMap {
 public:
  explicit RegionMap(const GridSpec& grid)
      : grid_(grid), labels_(grid.pixel_count(), Region::kWall) {}

  const GridSpec& grid() const noexcept { return grid_; }
  Region at(int row, int col) const {
    return labels_[static_cast<std::size_t>(row) * grid_.width() + col];
  }
  Region& at(int row, int col) {
    return labels_[static_cast<std::size_t>(row) * grid_.width() + col];
  }

 private:
  GridSpec grid_;
  std::vector<Region> labels_;
};

// Region of a continuous row in column `col`: above the ceiling boundary is
// ceiling, below the floor boundary is floor, anything else (including exact
// equality with a boundary) is wall.
Region classify_row(const LayoutMap& layout, double row, int col);

// Classifies every pixel center.
RegionMap classify_regions(const LayoutMap& layout);

enum class ResolveMode {
  // Exact trigonometry: d = h / sin(lat) on floor and ceiling,
  // d = r / cos(lat) on walls.
  kExact,
  // Linearized floor/ceiling formula and multiplicative wall construction as
  // originally published. Kept to measure the divergence from kExact.
  kPaperLiteral,
};

enum class HeightAggregator { kMedian, kMean, kSingleColumn };

enum class BoundarySampling {
  // Take the valid pixel nearest the boundary on the ceiling (floor) side and
  // extend it along the horizontal plane to the boundary. Exact whenever the
  // coarse map is exact.
  kPlaneExtrapolated,
  // Invalid-aware bilinear sample of the coarse map at the boundary point.
  kBilinear,
};

struct HeightOptions {
  HeightAggregator aggregator = HeightAggregator::kMedian;
  int single_column = 0;  // used by kSingleColumn
  BoundarySampling sampling = BoundarySampling::kPlaneExtrapolated;
  // kPlaneExtrapolated searches at most this many rows away from the boundary.
  int max_search_rows = 3;
};

// Per-column camera height estimates; nullopt where the column has no valid
// sample.
struct ColumnHeights {
  std::vector<std::optional<double>> up;
  std::vector<std::optional<double>> down;
};

ColumnHeights estimate_column_heights(const LayoutMap& layout, const DepthMap& coarse,
                                      const HeightOptions& options = {});

// |AP| = d_c sin(phi_c), |PB| = d_f sin(phi_f), aggregated over columns.
// Throws Error(kNoValidColumns) when no column yields an estimate and
// Error(kShapeMismatch) when layout and coarse grids differ.
CameraHeights resolve_camera_heights(const LayoutMap& layout, const DepthMap& coarse,
                                     const HeightOptions& options = {});

// Bilinear sample at a continuous coordinate with pixel centers at
// (i + 0.5, j + 0.5). Zero neighbors are dropped and the remaining weights
// renormalized. Columns wrap; rows clamp. Returns nullopt when every
// contributing neighbor is invalid.
std::optional<double> sample_bilinear(const DepthMap& map, double row, double col);

// Background depth at one continuous pixel coordinate. Throws Error(kDomain)
// if a ceiling or floor sample sits on the horizon.
double background_depth_at(const LayoutMap& layout, const CameraHeights& heights,
                           double row, double col, ResolveMode mode);

DepthMap resolve_background_depth(const LayoutMap& layout, const CameraHeights& heights,
                                  ResolveMode mode = ResolveMode::kExact);

}  // namespace roomdepth
