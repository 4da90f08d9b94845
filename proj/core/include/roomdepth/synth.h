#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "roomdepth/layout.h"
#include "roomdepth/maps.h"

namespace roomdepth {

struct Box {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  friend bool operator==(const Box&, const Box&) = default;
};

struct SceneSpec {
  ManhattanRoom room;
  std::vector<Box> boxes;
  std::uint64_t seed = 0;
};

// Throws Error(kInvalidArgument) unless the room is valid and every box is
// non-degenerate, strictly inside the shell and clear of the origin.
void validate_scene(const SceneSpec& scene);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

enum class FloorPlanKind { kRect, kLShape };

struct SceneConfig {
  FloorPlanKind plan = FloorPlanKind::kRect;
  int min_boxes = 0;
  int max_boxes = 4;
  Range room_extent{3.0, 8.0};       // bounding width and depth
  Range cam_to_floor{1.2, 1.8};
  Range room_height{2.4, 3.2};       // floor to ceiling
  Range lshape_cut_fraction{0.3, 0.6};
  Range box_footprint{0.3, 1.5};
  Range box_height{0.3, 1.5};
  double wall_clearance = 0.5;       // camera to every wall
  double box_camera_clearance = 0.3; // horizontal gap between a box and the camera
  int max_attempts = 1000;
};

// Deterministic in seed. Throws Error(kInvalidArgument) for empty ranges.
SceneSpec generate_scene(std::uint64_t seed, const SceneConfig& config = {});

// Seed of scene `index` in a batch started from `base_seed`.
std::uint64_t derive_scene_seed(std::uint64_t base_seed, std::uint64_t index);

// Smallest positive hit distance along the ray from the origin. Returns +inf
// when nothing is hit.
double raycast(const SceneSpec& scene, const Eigen::Vector3d& dir, bool include_foreground);

// Ray-cast every pixel center.
DepthMap raycast_depth(const SceneSpec& scene, const GridSpec& grid, bool include_foreground);

// 1 where renders with and without foreground agree within eps.
SegMap gt_background_mask(const SceneSpec& scene, const GridSpec& grid, double eps = 1e-6);

// True when every floor-plan vertex is visible from the camera and the
// columns holding consecutive vertices are at least `min_column_gap` apart.
bool corners_visible(const ManhattanRoom& room, const GridSpec& grid, int min_column_gap = 3);

struct NoiseSpec {
  double salt_frac = 0.0;
  double outlier_frac = 0.0;
  double outlier_offset = 2.0;
  std::uint64_t seed = 0;
};

struct CorruptionResult {
  DepthMap depth;
  std::vector<std::size_t> salt_pixels;
  std::vector<std::size_t> outlier_pixels;
};

// round(frac * N) distinct pixels are zeroed (salt) and a disjoint set of
// round(outlier_frac * N) valid pixels is pushed radially outward by
// outlier_offset. Deterministic in seed.
CorruptionResult corrupt_depth_detailed(const DepthMap& depth, const NoiseSpec& noise);
DepthMap corrupt_depth(const DepthMap& depth, const NoiseSpec& noise);

}  // namespace roomdepth
