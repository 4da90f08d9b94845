#include "roomdepth/equirect.h"

#include <cmath>
#include <string>

#include "roomdepth/error.h"

namespace roomdepth {

GridSpec::GridSpec(int width, int height) : width_(width), height_(height) {
  if (height <= 0 || width != 2 * height) {
    throw Error(ErrorCode::kInvalidArgument,
                "equirectangular grid must be 2:1 and non-empty, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

SphereAngles pixel_to_angles(double row, double col, const GridSpec& grid) {
  const double h = grid.height();
  const double w = grid.width();
  if (!(row >= 0.0 && row <= h) || !(col >= 0.0 && col <= w)) {
    throw Error(ErrorCode::kDomain, "pixel coordinate (" + std::to_string(row) + ", " +
                                        std::to_string(col) + ") outside the image");
  }
  return {(0.5 - row / h) * kPi, (col / w) * 2.0 * kPi - kPi};
}

PixelCoord angles_to_pixel(const SphereAngles& angles, const GridSpec& grid) {
  return {(0.5 - angles.lat / kPi) * grid.height(),
          (angles.lon + kPi) / (2.0 * kPi) * grid.width()};
}

Eigen::Vector3d angles_to_direction(const SphereAngles& angles) {
  const double c = std::cos(angles.lat);
  return {c * std::cos(angles.lon), c * std::sin(angles.lon), std::sin(angles.lat)};
}

Ray pixel_to_ray(double row, double col, const GridSpec& grid) {
  Ray ray;
  ray.dir = angles_to_direction(pixel_to_angles(row, col, grid));
  return ray;
}

double row_center_lat(int row, const GridSpec& grid) {
  return (0.5 - (row + 0.5) / grid.height()) * kPi;
}

double col_center_lon(int col, const GridSpec& grid) {
  return ((col + 0.5) / grid.width()) * 2.0 * kPi - kPi;
}

double wrap_angle(double angle) {
  double wrapped = std::fmod(angle + kPi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  wrapped -= kPi;
  // fmod can round up to exactly +pi.
  if (wrapped >= kPi) wrapped -= 2.0 * kPi;
  return wrapped;
}

double direction_lon(double x, double y) {
  return wrap_angle(std::atan2(y, x));
}

}  // namespace roomdepth
