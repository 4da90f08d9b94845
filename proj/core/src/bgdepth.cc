#include "roomdepth/bgdepth.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "roomdepth/error.h"

namespace roomdepth {
namespace {

// Camera-to-plane height from the pixel nearest the boundary on the plane side.
// A pixel at depth d and elevation lat on a horizontal plane satisfies
// d * sin|lat| = h, so extending it to the boundary gives
// d_boundary * sin(phi_boundary) = d * sin|lat|.
std::optional<double> plane_side_height(const DepthMap& coarse, int col, double boundary_row,
                                        bool ceiling, int max_rows) {
  const GridSpec& grid = coarse.grid();
  const int h = grid.height();
  const int step = ceiling ? -1 : 1;
  int row = ceiling ? static_cast<int>(std::ceil(boundary_row - 0.5)) - 1
                    : static_cast<int>(std::floor(boundary_row - 0.5)) + 1;
  for (int k = 0; k < max_rows && row >= 0 && row < h; ++k, row += step) {
    const double d = coarse.at(row, col);
    if (d > 0.0) {
      const double lat = row_center_lat(row, grid);
      return d * std::sin(ceiling ? lat : -lat);
    }
  }
  return std::nullopt;
}

}  // namespace

Region classify_row(const LayoutMap& layout, double row, int col) {
  if (row < layout.ceil_rows()[col]) return Region::kCeiling;
  if (row > layout.floor_rows()[col]) return Region::kFloor;
  return Region::kWall;
}

RegionMap classify_regions(const LayoutMap& layout) {
  RegionMap regions(layout.grid());
  for (int i = 0; i < layout.grid().height(); ++i) {
    for (int j = 0; j < layout.width(); ++j) {
      regions.at(i, j) = classify_row(layout, i + 0.5, j);
    }
  }
  return regions;
}

std::optional<double> sample_bilinear(const DepthMap& map, double row, double col) {
  const int h = map.height();
  const int w = map.width();
  const double y = row - 0.5;
  const double x = col - 0.5;
  const int i0 = static_cast<int>(std::floor(y));
  const int j0 = static_cast<int>(std::floor(x));
  const double fy = y - i0;
  const double fx = x - j0;
  double weighted = 0.0;
  double total = 0.0;
  for (int di = 0; di < 2; ++di) {
    const int i = std::clamp(i0 + di, 0, h - 1);
    const double wy = di == 0 ? 1.0 - fy : fy;
    for (int dj = 0; dj < 2; ++dj) {
      const int j = ((j0 + dj) % w + w) % w;
      const double wx = dj == 0 ? 1.0 - fx : fx;
      const double d = map.at(i, j);
      if (d <= 0.0 || wx * wy <= 0.0) continue;
      weighted += wx * wy * d;
      total += wx * wy;
    }
  }
  if (total <= 0.0) return std::nullopt;
  return weighted / total;
}

ColumnHeights estimate_column_heights(const LayoutMap& layout, const DepthMap& coarse,
                                      const HeightOptions& options) {
  require_same_grid(layout.grid(), coarse.grid(), "camera height resolution");
  const int w = layout.width();
  ColumnHeights out;
  out.up.resize(w);
  out.down.resize(w);
  for (int v = 0; v < w; ++v) {
    const double ceil_row = layout.ceil_rows()[v];
    const double floor_row = layout.floor_rows()[v];
    if (options.sampling == BoundarySampling::kBilinear) {
      const auto d_c = sample_bilinear(coarse, ceil_row, v + 0.5);
      const auto d_f = sample_bilinear(coarse, floor_row, v + 0.5);
      if (d_c) out.up[v] = *d_c * std::sin(layout.ceil_angle(v));
      if (d_f) out.down[v] = *d_f * std::sin(layout.floor_angle(v));
    } else {
      out.up[v] = plane_side_height(coarse, v, ceil_row, true, options.max_search_rows);
      out.down[v] = plane_side_height(coarse, v, floor_row, false, options.max_search_rows);
    }
  }
  return out;
}

CameraHeights resolve_camera_heights(const LayoutMap& layout, const DepthMap& coarse,
                                     const HeightOptions& options) {
  const ColumnHeights columns = estimate_column_heights(layout, coarse, options);

  auto aggregate = [&](const std::vector<std::optional<double>>& per_column,
                       const char* which) {
    if (options.aggregator == HeightAggregator::kSingleColumn) {
      const int v = options.single_column;
      if (v < 0 || v >= layout.width()) {
        throw Error(ErrorCode::kInvalidArgument, "single column index out of range");
      }
      if (!per_column[v]) {
        throw Error(ErrorCode::kNoValidColumns,
                    std::string("column ") + std::to_string(v) + " has no valid " + which +
                        " sample");
      }
      return *per_column[v];
    }
    std::vector<double> values;
    for (const auto& value : per_column) {
      if (value) values.push_back(*value);
    }
    if (values.empty()) {
      throw Error(ErrorCode::kNoValidColumns,
                  std::string("no column has a valid ") + which + " boundary sample");
    }
    if (options.aggregator == HeightAggregator::kMedian) return median_in_place(values);
    double sum = 0.0;
    for (double value : values) sum += value;
    return sum / static_cast<double>(values.size());
  };

  return {aggregate(columns.up, "ceiling"), aggregate(columns.down, "floor")};
}

double background_depth_at(const LayoutMap& layout, const CameraHeights& heights,
                           double row, double col, ResolveMode mode) {
  const GridSpec& grid = layout.grid();
  const SphereAngles angles = pixel_to_angles(row, col, grid);
  const int v = std::min(static_cast<int>(col), grid.width() - 1);
  const double h = grid.height();
  const Region region = classify_row(layout, row, v);

  if (region == Region::kWall) {
    const double range = heights.down / std::tan(layout.floor_angle(v));
    if (mode == ResolveMode::kExact) return range / std::cos(angles.lat);
    const double vertical = (row / h - 0.5) * kPi;
    const double horizontal = relative_azimuth(col_center_lon(v, grid), angles.lon);
    return std::cos(horizontal) * std::cos(vertical) * range;
  }

  const bool ceiling = region == Region::kCeiling;
  const double height = ceiling ? heights.up : heights.down;
  if (mode == ResolveMode::kExact) {
    const double s = std::sin(ceiling ? angles.lat : -angles.lat);
    if (!(s > 0.0)) {
      throw Error(ErrorCode::kDomain, "ceiling/floor sample on the horizon");
    }
    return height / s;
  }
  const double denom = (ceiling ? 0.5 * h - row : row - 0.5 * h) * kPi;
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::kDomain, "ceiling/floor sample on the horizon");
  }
  return height * h / denom;
}

DepthMap resolve_background_depth(const LayoutMap& layout, const CameraHeights& heights,
                                  ResolveMode mode) {
  validate_heights(heights);
  DepthMap out(layout.grid());
  for (int i = 0; i < out.height(); ++i) {
    for (int j = 0; j < out.width(); ++j) {
      out.at(i, j) = background_depth_at(layout, heights, i + 0.5, j + 0.5, mode);
    }
  }
  return out;
}

}  // namespace roomdepth
