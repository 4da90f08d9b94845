#include "roomdepth/denoise.h"

#include <algorithm>
#include <cmath>

namespace roomdepth {

bool inside_room_shell(const ManhattanRoom& room, const Eigen::Vector3d& p) {
  return p.z() >= -room.cam_to_floor && p.z() <= room.cam_to_ceil &&
         point_in_polygon(room.floor_plan, p.head<2>());
}

double distance_outside_shell(const ManhattanRoom& room, const Eigen::Vector3d& p) {
  // The solid is a right prism, so the squared distance splits into a
  // horizontal part (to the floor plan) and a vertical part (to the slab).
  const Eigen::Vector2d xy = p.head<2>();
  const double horizontal = point_in_polygon(room.floor_plan, xy)
                                ? 0.0
                                : distance_to_polygon_boundary(room.floor_plan, xy);
  const double vertical =
      std::max({0.0, p.z() - room.cam_to_ceil, -room.cam_to_floor - p.z()});
  return std::hypot(horizontal, vertical);
}

DepthMap denoise_depth(const DepthMap& gt, const DepthMap& background,
                       const ManhattanRoom& room, double slack) {
  require_same_grid(gt.grid(), background.grid(), "denoise_depth");
  if (!(slack > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "slack must be positive");
  }
  validate_room(room);
  const GridSpec& grid = gt.grid();
  DepthMap out = gt;
  for (int i = 0; i < grid.height(); ++i) {
    for (int j = 0; j < grid.width(); ++j) {
      const double d = gt.at(i, j);
      if (d <= 0.0) {
        out.at(i, j) = background.at(i, j);
        continue;
      }
      const Eigen::Vector3d point = d * pixel_to_ray(i + 0.5, j + 0.5, grid).dir;
      if (distance_outside_shell(room, point) > slack) out.at(i, j) = background.at(i, j);
    }
  }
  return out;
}

std::size_t count_outside_shell(const DepthMap& depth, const ManhattanRoom& room,
                                double slack) {
  const GridSpec& grid = depth.grid();
  std::size_t count = 0;
  for (int i = 0; i < grid.height(); ++i) {
    for (int j = 0; j < grid.width(); ++j) {
      const double d = depth.at(i, j);
      if (d <= 0.0) continue;
      const Eigen::Vector3d point = d * pixel_to_ray(i + 0.5, j + 0.5, grid).dir;
      if (distance_outside_shell(room, point) > slack) ++count;
    }
  }
  return count;
}

}  // namespace roomdepth
