#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "roomdepth/equirect.h"

namespace roomdepth {

// Per-column room layout: ceiling-wall boundary row, floor-wall boundary row
// (continuous pixel rows) and the probability that the column holds a corner.
class LayoutMap {
 public:
  // Throws Error(kShapeMismatch) on length mismatch with grid.width() and
  // Error(kInvalidArgument) unless 0 < ceil < H/2 < floor < H and
  // corner_prob in [0, 1] for every column.
  LayoutMap(const GridSpec& grid, std::vector<double> ceil_rows,
            std::vector<double> floor_rows, std::vector<double> corner_prob);

  const GridSpec& grid() const noexcept { return grid_; }
  int width() const noexcept { return grid_.width(); }
  const std::vector<double>& ceil_rows() const noexcept { return ceil_rows_; }
  const std::vector<double>& floor_rows() const noexcept { return floor_rows_; }
  const std::vector<double>& corner_prob() const noexcept { return corner_prob_; }

  // Elevation of the ceiling boundary above the horizon, (0.5 - u/H) * pi.
  double ceil_angle(int col) const;
  // Depression of the floor boundary below the horizon, (u/H - 0.5) * pi.
  double floor_angle(int col) const;

 private:
  GridSpec grid_;
  std::vector<double> ceil_rows_;
  std::vector<double> floor_rows_;
  std::vector<double> corner_prob_;
};

struct CameraHeights {
  double up = 0.0;    // camera to ceiling, meters
  double down = 0.0;  // camera to floor, meters
};

// Throws Error(kInvalidArgument) unless both heights are finite and > 0.
void validate_heights(const CameraHeights& heights);

// Rectilinear room around a camera at the origin. The floor plan is a simple
// counter-clockwise polygon in the horizontal plane (meters).
struct ManhattanRoom {
  std::vector<Eigen::Vector2d> floor_plan;
  double cam_to_floor = 0.0;
  double cam_to_ceil = 0.0;

  CameraHeights heights() const { return {cam_to_ceil, cam_to_floor}; }
};

struct RoomCheck {
  // Edges must be axis-aligned to within this many meters.
  double rectilinear_tol = 1e-6;
};

// Throws Error(kInvalidArgument) for fewer than 4 vertices, non-positive
// heights, clockwise orientation, non-axis-aligned edges or an origin not
// strictly inside; Error(kNonSimplePolygon) for self-intersections.
void validate_room(const ManhattanRoom& room, const RoomCheck& check = {});

// Even-odd point-in-polygon test. Points on the boundary count as inside.
bool point_in_polygon(const std::vector<Eigen::Vector2d>& polygon,
                      const Eigen::Vector2d& p);

// Distance from p to the closest polygon edge.
double distance_to_polygon_boundary(const std::vector<Eigen::Vector2d>& polygon,
                                    const Eigen::Vector2d& p);

// Distance from the origin to the first polygon edge hit along azimuth lon.
// Returns +inf when nothing is hit.
double horizontal_range(const std::vector<Eigen::Vector2d>& polygon, double lon);

bool is_simple_polygon(const std::vector<Eigen::Vector2d>& polygon);

double signed_area(const std::vector<Eigen::Vector2d>& polygon);

struct CornerOptions {
  double prob_threshold = 0.5;
  int nms_window = 1;
};

// Columns whose corner probability is >= threshold and is the maximum of the
// circular window [v - nms_window, v + nms_window]; ties go to the smaller
// index. Throws Error(kTooFewCorners) when fewer than 4 survive and
// Error(kInvalidArgument) for nms_window < 1.
std::vector<int> extract_corners(const LayoutMap& layout,
                                 const CornerOptions& options = {});

struct LayoutToRoomOptions {
  CornerOptions corners;
  // Regularize the polygon so consecutive edges alternate between x- and
  // y-aligned. Off only for exact layouts.
  bool snap = true;
  // Explicit corner columns; extract_corners runs when empty.
  std::optional<std::vector<int>> corner_columns;
};

// Lifts a layout to a room using the floor boundary and the camera-to-floor
// height for metric scale.
ManhattanRoom layout_to_room(const LayoutMap& layout, const CameraHeights& heights,
                             const LayoutToRoomOptions& options = {});

// Renders the exact layout of a room. Boundaries are evaluated at the column
// center azimuth; corner_prob is 1 at columns containing a vertex direction.
LayoutMap room_to_layout(const ManhattanRoom& room, const GridSpec& grid);

// Horizontal floor point seen at the given floor boundary row and column.
Eigen::Vector2d floor_point(double floor_row, int col, double cam_to_floor,
                            const GridSpec& grid);

}  // namespace roomdepth
