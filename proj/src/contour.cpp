#include "rimc/contour.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rimc/errors.hpp"

namespace rimc {

namespace {

// e^{2 pi i j / n}. Quarter turns are returned exactly; every other angle is
// computed from the reduced fraction j/n, which is identical for (j, n) and
// (2j, 2n).
Complex unit_root(int j, int n) {
  if ((4 * j) % n == 0) {
    switch ((4 * j) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) / static_cast<double>(n));
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Contour make_circle(Complex center, double radius, int n) {
  if (n < 2 || n % 2 != 0) {
    throw ConfigError("quadrature node count must be even and >= 2, got " + std::to_string(n));
  }
  if (!(radius > 0.0)) throw ConfigError("contour radius must be positive");
  const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
  Contour c{center, radius, {}, {}};
  c.nodes.reserve(n);
  c.weights.reserve(n);
  for (int j = 0; j < n; ++j) {
    const Complex offset = radius * unit_root(j, n);
    c.nodes.push_back(center + offset);
    c.weights.push_back(two_pi_i * offset / static_cast<double>(n));
  }
  return c;
}

Contour make_contour(const Region& r, int n) {
  return make_circle(r.center, r.half_side * std::numbers::sqrt2, n);
}

}  // namespace rimc
