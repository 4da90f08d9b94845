#pragma once

#include <Eigen/Core>

#include "roomdepth/layout.h"
#include "roomdepth/maps.h"

namespace roomdepth {

inline constexpr double kDefaultShellSlack = 1.0;  // meters

// The room solid is the floor plan extruded from z = -cam_to_floor to
// z = +cam_to_ceil.
bool inside_room_shell(const ManhattanRoom& room, const Eigen::Vector3d& p);

// Euclidean distance from p to the closed room solid; 0 inside.
double distance_outside_shell(const ManhattanRoom& room, const Eigen::Vector3d& p);

// Replaces measurement failures (gt == 0) and points unprojecting more than
// `slack` outside the room shell with the background value. In-room points
// are never touched.
DepthMap denoise_depth(const DepthMap& gt, const DepthMap& background,
                       const ManhattanRoom& room, double slack = kDefaultShellSlack);

// Number of valid pixels whose unprojection lies more than `slack` outside.
std::size_t count_outside_shell(const DepthMap& depth, const ManhattanRoom& room,
                                double slack);

}  // namespace roomdepth
