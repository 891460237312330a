#include "rimc/region.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rimc/config.hpp"
#include "rimc/errors.hpp"

namespace rimc {

bool Region::contains(Complex z, double slack) const noexcept {
  const Complex d = z - center;
  return std::abs(d.real()) <= half_side + slack && std::abs(d.imag()) <= half_side + slack;
}

bool Rectangle::contains(Complex z, double slack) const noexcept {
  return z.real() >= xmin - slack && z.real() <= xmax + slack && z.imag() >= ymin - slack &&
         z.imag() <= ymax + slack;
}

double Rectangle::distance_to_boundary(Complex z) const noexcept {
  return std::min({z.real() - xmin, xmax - z.real(), z.imag() - ymin, ymax - z.imag()});
}

Region Rectangle::bounding_square() const noexcept {
  const Complex center(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
  return Region{center, 0.5 * std::max(xmax - xmin, ymax - ymin), 0};
}

Rectangle Rectangle::of(const Region& r) noexcept {
  return Rectangle{r.center.real() - r.half_side, r.center.real() + r.half_side,
                   r.center.imag() - r.half_side, r.center.imag() + r.half_side};
}

std::array<Region, 4> subdivide(const Region& r) {
  const double q = 0.5 * r.half_side;
  const int depth = r.depth + 1;
  return {Region{r.center + Complex(q, q), q, depth}, Region{r.center + Complex(-q, q), q, depth},
          Region{r.center + Complex(q, -q), q, depth},
          Region{r.center + Complex(-q, -q), q, depth}};
}

void Config::validate() const {
  if (!(d0 > 0.0)) throw ConfigError("precision d0 must be positive");
  if (!(eps > 0.0)) throw ConfigError("residual tolerance must be positive");
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw ConfigError("indicator threshold must lie in (0, 1)");
  if (m < 1) throw ConfigError("Krylov dimension must be at least 1");
  if (n0 < 2) throw ConfigError("quadrature count n0 must be at least 2");
  if (max_depth < 1) throw ConfigError("max_depth must be positive");
  if (shift_budget < 1) throw ConfigError("shift budget must be positive");
  if (initial_shift_grid < 1) throw ConfigError("initial shift grid must be at least 1");
  if (!(legacy_threshold > 0.0)) throw ConfigError("legacy threshold must be positive");
  if (threads < 1) throw ConfigError("thread count must be at least 1, got " + std::to_string(threads));
}

}  // namespace rimc
