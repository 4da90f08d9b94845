#pragma once

#include <numbers>

#include <Eigen/Core>

namespace roomdepth {

inline constexpr double kPi = std::numbers::pi;

// Equirectangular image dimensions. Always 2:1.
class GridSpec {
 public:
  // Throws Error(kInvalidArgument) unless width == 2 * height > 0.
  GridSpec(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int width_;
  int height_;
};

// lat in [-pi/2, pi/2] (positive toward zenith), lon in [-pi, pi).
struct SphereAngles {
  double lat = 0.0;
  double lon = 0.0;
};

// Continuous pixel coordinates. Integer pixel (i, j) covers
// [i, i+1) x [j, j+1); its center is (i + 0.5, j + 0.5).
struct PixelCoord {
  double row = 0.0;
  double col = 0.0;
};

struct Ray {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d dir = Eigen::Vector3d::UnitX();
};

// lat = (0.5 - row/H) * pi, lon = (col/W) * 2pi - pi.
// Throws Error(kDomain) when row is outside [0, H] or col outside [0, W].
// col == W yields lon == pi, the same meridian as the seam at -pi.
SphereAngles pixel_to_angles(double row, double col, const GridSpec& grid);

PixelCoord angles_to_pixel(const SphereAngles& angles, const GridSpec& grid);

// Unit direction for the given angles; world frame is z up, lon 0 along +x.
Eigen::Vector3d angles_to_direction(const SphereAngles& angles);

// Ray from the camera center (origin) through a continuous pixel coordinate.
Ray pixel_to_ray(double row, double col, const GridSpec& grid);

// Latitude of integer row i sampled at its pixel center.
double row_center_lat(int row, const GridSpec& grid);
// Longitude of integer column j sampled at its pixel center.
double col_center_lon(int col, const GridSpec& grid);

// Wraps an angle into [-pi, pi).
double wrap_angle(double angle);

// Signed azimuth offset b - a, wrapped into [-pi, pi).
inline double relative_azimuth(double lon_a, double lon_b) {
  return wrap_angle(lon_b - lon_a);
}

// Azimuth (lon) of a direction; inverse of angles_to_direction restricted to
// the horizontal component.
double direction_lon(double x, double y);

}  // namespace roomdepth
