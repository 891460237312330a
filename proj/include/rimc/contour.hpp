#pragma once

#include <vector>

#include "rimc/region.hpp"
#include "rimc/types.hpp"

namespace rimc {

/// Trapezoidal rule on a circle: z_j = c + r e^{2 pi i j / n} and
/// w_j = 2 pi i (z_j - c) / n, so (1/2 pi i) sum_j w_j g(z_j) approximates
/// (1/2 pi i) of the contour integral of g.
struct Contour {
  Complex center;
  double radius = 0.0;
  std::vector<Complex> nodes;
  std::vector<Complex> weights;

  Index n() const noexcept { return static_cast<Index>(nodes.size()); }
};

/// Circle of n nodes (n even, >= 2). Quarter-turn nodes are exact, and the
/// even-indexed nodes of the 2n rule reproduce the n rule bit for bit.
Contour make_circle(Complex center, double radius, int n);

/// Circle circumscribing the square r (radius = half_side * sqrt 2).
Contour make_contour(const Region& r, int n);

/// (1/2 pi i) sum_j w_j g(z_j).
template <typename F>
Complex apply_rule(const Contour& c, F&& g) {
  Complex sum(0.0);
  for (Index j = 0; j < c.n(); ++j) sum += c.weights[j] * g(c.nodes[j]);
  return sum / Complex(0.0, 2.0 * 3.14159265358979323846);
}

}  // namespace rimc
