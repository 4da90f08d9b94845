#include "roomdepth/synth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "roomdepth/error.h"
#include "roomdepth/rng.h"

namespace roomdepth {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Boxes keep at least this far from walls and the ceiling.
constexpr double kBoxMargin = 0.01;

void check_range(const Range& range, const char* name) {
  if (!(range.lo <= range.hi) || !std::isfinite(range.lo) || !std::isfinite(range.hi)) {
    throw Error(ErrorCode::kInvalidArgument, std::string("empty range: ") + name);
  }
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Axis-aligned rectangle [min, max] in the floor plane.
struct Rect {
  Eigen::Vector2d min;
  Eigen::Vector2d max;

  bool contains(const Eigen::Vector2d& p, double grow = 0.0) const {
    return p.x() >= min.x() - grow && p.x() <= max.x() + grow && p.y() >= min.y() - grow &&
           p.y() <= max.y() + grow;
  }
  bool overlaps(const Rect& o) const {
    return min.x() < o.max.x() && o.min.x() < max.x() && min.y() < o.max.y() &&
           o.min.y() < max.y();
  }
};

// True when the rectangle sits inside the rectilinear polygon with `margin`
// to spare. With all corners inside, an edge can only cut the rectangle if a
// polygon vertex falls within it.
bool rect_inside_polygon(const Rect& rect, const std::vector<Eigen::Vector2d>& polygon,
                         double margin) {
  const Eigen::Vector2d corners[4] = {rect.min,
                                      {rect.max.x(), rect.min.y()},
                                      rect.max,
                                      {rect.min.x(), rect.max.y()}};
  for (const auto& c : corners) {
    if (!point_in_polygon(polygon, c) || distance_to_polygon_boundary(polygon, c) <= margin) {
      return false;
    }
  }
  for (const auto& v : polygon) {
    if (rect.contains(v, margin)) return false;
  }
  return true;
}

Rect footprint(const Box& box) { return {box.min.head<2>(), box.max.head<2>()}; }

std::vector<Eigen::Vector2d> make_floor_plan(FloorPlanKind kind, double size_x, double size_y,
                                             const SceneConfig& config, Xoshiro256& rng) {
  if (kind == FloorPlanKind::kRect) {
    return {{0.0, 0.0}, {size_x, 0.0}, {size_x, size_y}, {0.0, size_y}};
  }
  const double cut_x = size_x * rng.uniform(config.lshape_cut_fraction.lo,
                                            config.lshape_cut_fraction.hi);
  const double cut_y = size_y * rng.uniform(config.lshape_cut_fraction.lo,
                                            config.lshape_cut_fraction.hi);
  const auto quadrant = rng.uniform_int(0, 3);
  // Cut the (+x, +y) corner, then mirror into the chosen quadrant.
  std::vector<Eigen::Vector2d> plan = {{0.0, 0.0},
                                       {size_x, 0.0},
                                       {size_x, size_y - cut_y},
                                       {size_x - cut_x, size_y - cut_y},
                                       {size_x - cut_x, size_y},
                                       {0.0, size_y}};
  const bool mirror_x = quadrant == 1 || quadrant == 2;
  const bool mirror_y = quadrant == 2 || quadrant == 3;
  for (auto& p : plan) {
    if (mirror_x) p.x() = size_x - p.x();
    if (mirror_y) p.y() = size_y - p.y();
  }
  if (mirror_x != mirror_y) std::reverse(plan.begin(), plan.end());
  return plan;
}

// Entry distance of a ray from the origin into an axis-aligned box.
double ray_box(const Box& box, const Eigen::Vector3d& dir) {
  double t_near = -kInf;
  double t_far = kInf;
  for (int axis = 0; axis < 3; ++axis) {
    if (dir[axis] == 0.0) {
      if (0.0 < box.min[axis] || 0.0 > box.max[axis]) return kInf;
      continue;
    }
    double t0 = box.min[axis] / dir[axis];
    double t1 = box.max[axis] / dir[axis];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
  }
  if (t_near > t_far || t_far <= 0.0) return kInf;
  return t_near > 0.0 ? t_near : t_far;
}

}  // namespace

void validate_scene(const SceneSpec& scene) {
  validate_room(scene.room);
  const auto& room = scene.room;
  for (std::size_t b = 0; b < scene.boxes.size(); ++b) {
    const Box& box = scene.boxes[b];
    const std::string label = "box " + std::to_string(b);
    if (!(box.min.array() < box.max.array()).all()) {
      throw Error(ErrorCode::kInvalidArgument, label + " has min >= max");
    }
    if (box.min.z() < -room.cam_to_floor || box.max.z() >= room.cam_to_ceil ||
        !rect_inside_polygon(footprint(box), room.floor_plan, 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, label + " is not inside the room shell");
    }
    if ((box.min.array() <= 0.0).all() && (box.max.array() >= 0.0).all()) {
      throw Error(ErrorCode::kInvalidArgument, label + " contains the camera");
    }
  }
}

std::uint64_t derive_scene_seed(std::uint64_t base_seed, std::uint64_t index) {
  SplitMix64 mix(base_seed ^ (index * 0xd1342543de82ef95ULL));
  mix.next();
  return mix.next();
}

SceneSpec generate_scene(std::uint64_t seed, const SceneConfig& config) {
  check_range(config.room_extent, "room_extent");
  check_range(config.cam_to_floor, "cam_to_floor");
  check_range(config.room_height, "room_height");
  check_range(config.lshape_cut_fraction, "lshape_cut_fraction");
  check_range(config.box_footprint, "box_footprint");
  check_range(config.box_height, "box_height");
  if (config.min_boxes < 0 || config.max_boxes < config.min_boxes) {
    throw Error(ErrorCode::kInvalidArgument, "empty box count range");
  }
  if (config.room_extent.lo <= 2.0 * config.wall_clearance) {
    throw Error(ErrorCode::kInvalidArgument, "rooms too small for the wall clearance");
  }
  if (config.room_height.lo <= config.cam_to_floor.hi) {
    throw Error(ErrorCode::kInvalidArgument, "room height must exceed the camera height");
  }

  Xoshiro256 rng(seed);
  SceneSpec scene;
  scene.seed = seed;

  const double size_x = rng.uniform(config.room_extent.lo, config.room_extent.hi);
  const double size_y = rng.uniform(config.room_extent.lo, config.room_extent.hi);
  std::vector<Eigen::Vector2d> plan = make_floor_plan(config.plan, size_x, size_y, config, rng);

  // The camera position is rejection-sampled; the rectangle case always
  // succeeds on the first draw.
  Eigen::Vector2d camera(0.5 * size_x, 0.5 * size_y);
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    const Eigen::Vector2d c(rng.uniform(config.wall_clearance, size_x - config.wall_clearance),
                            rng.uniform(config.wall_clearance, size_y - config.wall_clearance));
    if (point_in_polygon(plan, c) &&
        distance_to_polygon_boundary(plan, c) >= config.wall_clearance) {
      camera = c;
      break;
    }
  }
  for (auto& p : plan) p -= camera;

  scene.room.floor_plan = std::move(plan);
  scene.room.cam_to_floor = rng.uniform(config.cam_to_floor.lo, config.cam_to_floor.hi);
  scene.room.cam_to_ceil =
      rng.uniform(config.room_height.lo, config.room_height.hi) - scene.room.cam_to_floor;

  Eigen::Vector2d lo = scene.room.floor_plan.front();
  Eigen::Vector2d hi = lo;
  for (const auto& p : scene.room.floor_plan) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double floor_z = -scene.room.cam_to_floor;
  const double ceil_z = scene.room.cam_to_ceil;

  const auto box_count = rng.uniform_int(config.min_boxes, config.max_boxes);
  for (std::int64_t b = 0; b < box_count; ++b) {
    for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
      const double sx = rng.uniform(config.box_footprint.lo, config.box_footprint.hi);
      const double sy = rng.uniform(config.box_footprint.lo, config.box_footprint.hi);
      const double sz = rng.uniform(config.box_height.lo, config.box_height.hi);
      const double x0 = rng.uniform(lo.x(), hi.x() - sx);
      const double y0 = rng.uniform(lo.y(), hi.y() - sy);
      const Rect rect{{x0, y0}, {x0 + sx, y0 + sy}};
      if (floor_z + sz >= ceil_z - kBoxMargin) continue;
      if (rect.contains(Eigen::Vector2d::Zero(), config.box_camera_clearance)) continue;
      if (!rect_inside_polygon(rect, scene.room.floor_plan, kBoxMargin)) continue;
      const bool collides = std::any_of(scene.boxes.begin(), scene.boxes.end(),
                                        [&](const Box& other) {
                                          return footprint(other).overlaps(rect);
                                        });
      if (collides) continue;
      scene.boxes.push_back(
          {{rect.min.x(), rect.min.y(), floor_z}, {rect.max.x(), rect.max.y(), floor_z + sz}});
      break;
    }
  }
  return scene;
}

double raycast(const SceneSpec& scene, const Eigen::Vector3d& dir, bool include_foreground) {
  const ManhattanRoom& room = scene.room;
  double best = kInf;
  if (dir.z() < 0.0) best = std::min(best, room.cam_to_floor / -dir.z());
  if (dir.z() > 0.0) best = std::min(best, room.cam_to_ceil / dir.z());

  const Eigen::Vector2d horizontal = dir.head<2>();
  const auto& plan = room.floor_plan;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Eigen::Vector2d& a = plan[i];
    const Eigen::Vector2d edge = plan[(i + 1) % plan.size()] - a;
    const double denom = cross(horizontal, edge);
    if (denom == 0.0) continue;
    const double t = cross(a, edge) / denom;
    const double s = cross(a, horizontal) / denom;
    if (!(t > 0.0 && s >= 0.0 && s <= 1.0)) continue;
    const double z = t * dir.z();
    if (z >= -room.cam_to_floor && z <= room.cam_to_ceil) best = std::min(best, t);
  }

  if (include_foreground) {
    for (const Box& box : scene.boxes) best = std::min(best, ray_box(box, dir));
  }
  return best;
}

DepthMap raycast_depth(const SceneSpec& scene, const GridSpec& grid, bool include_foreground) {
  DepthMap out(grid);
  for (int i = 0; i < grid.height(); ++i) {
    for (int j = 0; j < grid.width(); ++j) {
      const Eigen::Vector3d dir = pixel_to_ray(i + 0.5, j + 0.5, grid).dir;
      const double d = raycast(scene, dir, include_foreground);
      out.at(i, j) = std::isfinite(d) ? d : 0.0;
    }
  }
  return out;
}

SegMap gt_background_mask(const SceneSpec& scene, const GridSpec& grid, double eps) {
  const DepthMap full = raycast_depth(scene, grid, true);
  const DepthMap background = raycast_depth(scene, grid, false);
  SegMap mask(grid);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = std::abs(full[i] - background[i]) <= eps ? 1.0 : 0.0;
  }
  return mask;
}

bool corners_visible(const ManhattanRoom& room, const GridSpec& grid, int min_column_gap) {
  const int w = grid.width();
  std::vector<int> columns;
  for (const auto& vertex : room.floor_plan) {
    const double lon = direction_lon(vertex.x(), vertex.y());
    if (horizontal_range(room.floor_plan, lon) < vertex.norm() * (1.0 - 1e-9)) return false;
    columns.push_back(
        std::clamp(static_cast<int>(std::floor((lon + kPi) / (2.0 * kPi) * w)), 0, w - 1));
  }
  std::sort(columns.begin(), columns.end());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const int next = k + 1 < columns.size() ? columns[k + 1] : columns.front() + w;
    if (next - columns[k] < min_column_gap) return false;
  }
  return true;
}

CorruptionResult corrupt_depth_detailed(const DepthMap& depth, const NoiseSpec& noise) {
  if (!(noise.salt_frac >= 0.0 && noise.outlier_frac >= 0.0 &&
        noise.salt_frac + noise.outlier_frac <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise fractions must be >= 0 and sum to <= 1");
  }
  if (noise.outlier_frac > 0.0 && !(noise.outlier_offset > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "outlier offset must be positive");
  }
  const std::size_t n = depth.size();
  const auto salt_count = static_cast<std::size_t>(std::llround(noise.salt_frac * n));
  const auto outlier_count =
      std::min(n - salt_count, static_cast<std::size_t>(std::llround(noise.outlier_frac * n)));

  // Partial Fisher-Yates: the first salt_count + outlier_count slots are a
  // uniform sample without replacement.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Xoshiro256 rng(noise.seed);
  const std::size_t picked = salt_count + outlier_count;
  for (std::size_t k = 0; k < picked; ++k) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n - 1)));
    std::swap(order[k], order[j]);
  }

  CorruptionResult result{depth, {}, {}};
  result.salt_pixels.assign(order.begin(), order.begin() + salt_count);
  result.outlier_pixels.assign(order.begin() + salt_count, order.begin() + picked);
  for (std::size_t i : result.salt_pixels) result.depth[i] = 0.0;
  for (std::size_t i : result.outlier_pixels) {
    if (result.depth[i] > 0.0) result.depth[i] += noise.outlier_offset;
  }
  std::sort(result.salt_pixels.begin(), result.salt_pixels.end());
  std::sort(result.outlier_pixels.begin(), result.outlier_pixels.end());
  return result;
}

DepthMap corrupt_depth(const DepthMap& depth, const NoiseSpec& noise) {
  return corrupt_depth_detailed(depth, noise).depth;
}

}  // namespace roomdepth
