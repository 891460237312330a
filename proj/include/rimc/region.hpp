#pragma once

#include <array>

#include "rimc/types.hpp"

namespace rimc {

/// Axis-aligned square {center + x + iy : |x|, |y| <= half_side}.
struct Region {
  Complex center;
  double half_side = 0.0;
  int depth = 0;

  double size() const noexcept { return 2.0 * half_side; }
  bool contains(Complex z, double slack = 0.0) const noexcept;
};

/// Axis-aligned rectangle [xmin, xmax] x [ymin, ymax].
struct Rectangle {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  bool valid() const noexcept { return xmin < xmax && ymin < ymax; }
  bool contains(Complex z, double slack = 0.0) const noexcept;
  /// Distance from an interior point to the nearest edge.
  double distance_to_boundary(Complex z) const noexcept;
  /// Smallest square sharing the rectangle's center that covers it.
  Region bounding_square() const noexcept;
  static Rectangle of(const Region& r) noexcept;
};

/// The four equal quadrants of r, depth + 1.
std::array<Region, 4> subdivide(const Region& r);

}  // namespace rimc
