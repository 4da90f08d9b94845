#include "roomdepth/layout.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "roomdepth/error.h"

namespace roomdepth {
namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

int orientation(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                const Eigen::Vector2d& c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                const Eigen::Vector2d& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

// Infinite line through `point` along unit `dir`.
struct Line2 {
  Eigen::Vector2d point;
  Eigen::Vector2d dir;
};

// Total least squares fit.
Line2 fit_line(const std::vector<Eigen::Vector2d>& points) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : points) mean += p;
  mean /= static_cast<double>(points.size());
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  for (const auto& p : points) {
    const Eigen::Vector2d d = p - mean;
    scatter += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(scatter);
  // Eigenvalues ascend; the last eigenvector spans the points.
  return {mean, solver.eigenvectors().col(1).normalized()};
}

std::optional<Eigen::Vector2d> intersect(const Line2& a, const Line2& b) {
  const double denom = cross(a.dir, b.dir);
  // Walls closer than ~0.06 degrees to parallel do not define a corner.
  if (std::abs(denom) < 1e-3) return std::nullopt;
  const double t = cross(b.point - a.point, b.dir) / denom;
  return a.point + t * a.dir;
}

void snap_to_manhattan(std::vector<Eigen::Vector2d>& vertices) {
  const std::size_t n = vertices.size();
  if (n % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot snap " + std::to_string(n) +
                    " corners to a Manhattan polygon (needs an even count)");
  }
  // Edge k joins vertex k and k+1. Choose which edge parity is x-aligned.
  double cost[2] = {0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Vector2d d = vertices[(k + 1) % n] - vertices[k];
    cost[k % 2] += d.y() * d.y();  // if edge k is x-aligned
    cost[1 - k % 2] += d.x() * d.x();
  }
  const std::size_t x_aligned_parity = cost[0] <= cost[1] ? 0 : 1;
  std::vector<Eigen::Vector2d> snapped = vertices;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    if (k % 2 == x_aligned_parity) {
      const double y = 0.5 * (vertices[k].y() + vertices[next].y());
      snapped[k].y() = y;
      snapped[next].y() = y;
    } else {
      const double x = 0.5 * (vertices[k].x() + vertices[next].x());
      snapped[k].x() = x;
      snapped[next].x() = x;
    }
  }
  vertices = std::move(snapped);
}

}  // namespace

LayoutMap::LayoutMap(const GridSpec& grid, std::vector<double> ceil_rows,
                     std::vector<double> floor_rows, std::vector<double> corner_prob)
    : grid_(grid),
      ceil_rows_(std::move(ceil_rows)),
      floor_rows_(std::move(floor_rows)),
      corner_prob_(std::move(corner_prob)) {
  const auto w = static_cast<std::size_t>(grid_.width());
  if (ceil_rows_.size() != w || floor_rows_.size() != w || corner_prob_.size() != w) {
    throw Error(ErrorCode::kShapeMismatch, "layout arrays must have one entry per column (" +
                                               std::to_string(w) + ")");
  }
  const double half = 0.5 * grid_.height();
  const double h = grid_.height();
  for (std::size_t v = 0; v < w; ++v) {
    if (!(ceil_rows_[v] > 0.0 && ceil_rows_[v] < half)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ceiling boundary of column " + std::to_string(v) + " not in (0, H/2)");
    }
    if (!(floor_rows_[v] > half && floor_rows_[v] < h)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "floor boundary of column " + std::to_string(v) + " not in (H/2, H)");
    }
    if (!(corner_prob_[v] >= 0.0 && corner_prob_[v] <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "corner probability of column " + std::to_string(v) + " not in [0, 1]");
    }
  }
}

double LayoutMap::ceil_angle(int col) const {
  return (0.5 - ceil_rows_.at(col) / grid_.height()) * kPi;
}

double LayoutMap::floor_angle(int col) const {
  return (floor_rows_.at(col) / grid_.height() - 0.5) * kPi;
}

void validate_heights(const CameraHeights& heights) {
  if (!(std::isfinite(heights.up) && heights.up > 0.0 && std::isfinite(heights.down) &&
        heights.down > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "camera heights must be finite and positive");
  }
}

double signed_area(const std::vector<Eigen::Vector2d>& polygon) {
  double area = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    area += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return 0.5 * area;
}

bool is_simple_polygon(const std::vector<Eigen::Vector2d>& polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (polygon[i] == polygon[(i + 1) % n]) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(polygon[i], polygon[(i + 1) % n], polygon[j],
                             polygon[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

bool point_in_polygon(const std::vector<Eigen::Vector2d>& polygon, const Eigen::Vector2d& p) {
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % n];
    if (orientation(a, b, p) == 0 && on_segment(a, b, p)) return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = polygon[i];
    const auto& b = polygon[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x();
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

double distance_to_polygon_boundary(const std::vector<Eigen::Vector2d>& polygon,
                                    const Eigen::Vector2d& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    best = std::min(best, point_segment_distance(p, polygon[i],
                                                 polygon[(i + 1) % polygon.size()]));
  }
  return best;
}

double horizontal_range(const std::vector<Eigen::Vector2d>& polygon, double lon) {
  const Eigen::Vector2d d(std::cos(lon), std::sin(lon));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Eigen::Vector2d& a = polygon[i];
    const Eigen::Vector2d e = polygon[(i + 1) % polygon.size()] - a;
    const double denom = cross(d, e);
    if (denom == 0.0) continue;
    const double t = cross(a, e) / denom;
    const double s = cross(a, d) / denom;
    if (t > 0.0 && s >= 0.0 && s <= 1.0) best = std::min(best, t);
  }
  return best;
}

void validate_room(const ManhattanRoom& room, const RoomCheck& check) {
  const auto& poly = room.floor_plan;
  if (poly.size() < 4) {
    throw Error(ErrorCode::kInvalidArgument, "room needs at least 4 vertices");
  }
  validate_heights(room.heights());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (!poly[i].allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "room vertex is not finite");
    }
  }
  if (!is_simple_polygon(poly)) {
    throw Error(ErrorCode::kNonSimplePolygon, "floor plan is not a simple polygon");
  }
  if (signed_area(poly) <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "floor plan must be counter-clockwise");
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Eigen::Vector2d d = poly[(i + 1) % poly.size()] - poly[i];
    if (std::min(std::abs(d.x()), std::abs(d.y())) > check.rectilinear_tol) {
      throw Error(ErrorCode::kInvalidArgument,
                  "floor plan edge " + std::to_string(i) + " is not axis-aligned");
    }
  }
  const Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  if (!point_in_polygon(poly, origin) || distance_to_polygon_boundary(poly, origin) <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "camera must lie strictly inside the floor plan");
  }
}

std::vector<int> extract_corners(const LayoutMap& layout, const CornerOptions& options) {
  if (options.nms_window < 1) {
    throw Error(ErrorCode::kInvalidArgument, "nms_window must be >= 1");
  }
  const auto& prob = layout.corner_prob();
  const int w = layout.width();
  std::vector<int> corners;
  for (int v = 0; v < w; ++v) {
    if (prob[v] < options.prob_threshold || prob[v] <= 0.0) continue;
    bool peak = true;
    for (int k = -options.nms_window; k <= options.nms_window && peak; ++k) {
      if (k == 0) continue;
      const int u = ((v + k) % w + w) % w;
      if (u == v) continue;
      if (prob[u] > prob[v] || (prob[u] == prob[v] && u < v)) peak = false;
    }
    if (peak) corners.push_back(v);
  }
  if (corners.size() < 4) {
    throw Error(ErrorCode::kTooFewCorners, "found " + std::to_string(corners.size()) +
                                               " corners, a room needs at least 4");
  }
  return corners;
}

Eigen::Vector2d floor_point(double floor_row, int col, double cam_to_floor,
                            const GridSpec& grid) {
  const double depression = (floor_row / grid.height() - 0.5) * kPi;
  const double range = cam_to_floor / std::tan(depression);
  const double lon = col_center_lon(col, grid);
  return {range * std::cos(lon), range * std::sin(lon)};
}

ManhattanRoom layout_to_room(const LayoutMap& layout, const CameraHeights& heights,
                             const LayoutToRoomOptions& options) {
  validate_heights(heights);
  std::vector<int> corners = options.corner_columns ? *options.corner_columns
                                                    : extract_corners(layout, options.corners);
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  const int w = layout.width();
  for (int c : corners) {
    if (c < 0 || c >= w) {
      throw Error(ErrorCode::kInvalidArgument, "corner column out of range");
    }
  }
  const std::size_t n = corners.size();
  if (n < 4) {
    throw Error(ErrorCode::kTooFewCorners, "a room needs at least 4 corners");
  }

  const auto& floor_rows = layout.floor_rows();
  auto point_at = [&](int col) {
    return floor_point(floor_rows[col], col, heights.down, layout.grid());
  };

  // Wall k spans the columns strictly between corner k and corner k+1.
  std::vector<Line2> walls;
  walls.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const int begin = corners[k];
    const int end = corners[(k + 1) % n];
    std::vector<Eigen::Vector2d> points;
    for (int v = (begin + 1) % w; v != end; v = (v + 1) % w) points.push_back(point_at(v));
    if (points.size() < 2) {
      points.push_back(point_at(begin));
      points.push_back(point_at(end));
    }
    walls.push_back(fit_line(points));
  }

  std::vector<Eigen::Vector2d> vertices;
  vertices.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto corner = intersect(walls[(k + n - 1) % n], walls[k]);
    vertices.push_back(corner ? *corner : point_at(corners[k]));
  }
  if (options.snap) snap_to_manhattan(vertices);

  ManhattanRoom room{std::move(vertices), heights.down, heights.up};
  if (!is_simple_polygon(room.floor_plan)) {
    throw Error(ErrorCode::kNonSimplePolygon, "layout produces a self-intersecting floor plan");
  }
  validate_room(room);
  return room;
}

LayoutMap room_to_layout(const ManhattanRoom& room, const GridSpec& grid) {
  validate_room(room);
  const int w = grid.width();
  const double h = grid.height();
  std::vector<double> ceil_rows(w);
  std::vector<double> floor_rows(w);
  std::vector<double> corner_prob(w, 0.0);
  for (int v = 0; v < w; ++v) {
    const double range = horizontal_range(room.floor_plan, col_center_lon(v, grid));
    floor_rows[v] = h * (0.5 + std::atan(room.cam_to_floor / range) / kPi);
    ceil_rows[v] = h * (0.5 - std::atan(room.cam_to_ceil / range) / kPi);
  }
  for (const auto& vertex : room.floor_plan) {
    const double lon = direction_lon(vertex.x(), vertex.y());
    const int col = std::clamp(static_cast<int>(std::floor((lon + kPi) / (2.0 * kPi) * w)), 0,
                               w - 1);
    corner_prob[col] = 1.0;
  }
  return LayoutMap(grid, std::move(ceil_rows), std::move(floor_rows), std::move(corner_prob));
}

}  // namespace roomdepth
