#pragma once

// Brute-force reference routines used only by tests. Each one takes a
// deliberately different path from the library code it checks.

#include <vector>

#include <Eigen/Core>

#include "roomdepth/layout.h"
#include "roomdepth/maps.h"
#include "roomdepth/synth.h"

namespace roomdepth::oracle {

// Winding-number inside test, independent of the library's even-odd test.
bool inside_polygon_winding(const std::vector<Eigen::Vector2d>& polygon,
                            const Eigen::Vector2d& p);

// Minimum distance from p to every face of the closed room shell (wall quads
// plus floor/ceiling caps), enumerated face by face.
double shell_surface_distance(const ManhattanRoom& room, const Eigen::Vector3d& p);

// True when p lies in the room solid.
bool inside_shell(const ManhattanRoom& room, const Eigen::Vector3d& p);

// First entry of the ray from the origin into the box, found by marching in
// small steps and bisecting the inside/outside transition.
double march_ray_box(const Box& box, const Eigen::Vector3d& dir, double max_t = 50.0);

// Straight per-pixel evaluation of the strict residual rule.
SegMap brute_seg_labels(const DepthMap& gt, const DepthMap& background, double gamma);

// Axis-aligned square room of half-width `half` centered on the camera.
ManhattanRoom square_room(double half, double cam_to_floor, double cam_to_ceil);

// Room depth renders do not depend on include_foreground; helper for
// background-only scenes.
SceneSpec background_scene(const ManhattanRoom& room);

// Scenes whose corners are all visible; draws seeds from `first_seed` upward.
std::vector<SceneSpec> visible_corner_scenes(std::size_t count, std::uint64_t first_seed,
                                             const GridSpec& grid, bool include_lshape);

double rmse(const DepthMap& a, const DepthMap& b);

}  // namespace roomdepth::oracle
