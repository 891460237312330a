#pragma once

#include <cstddef>
#include <cstdint>

#include "rimc/types.hpp"

namespace rimc {

/// Solver parameters.
struct Config {
  double d0 = 1e-9;      // stop subdividing once the region side is <= d0
  double eps = 1e-10;    // accepted residual of a Krylov node solve
  double delta0 = 0.2;   // indicator threshold
  Index m = 50;          // Krylov dimension
  int n0 = 4;            // coarse quadrature count; the fine rule uses 2*n0
  std::uint64_t seed = 42;
  int max_depth = 60;
  std::size_t shift_budget = 256;
  int initial_shift_grid = 1;

  bool legacy_indicator = false;  // use |P(Pf/|Pf|)| instead of the nested-quadrature ratio
  double legacy_threshold = 0.1;
  bool krylov_reuse = true;  // false: one direct factorization per quadrature node
  int threads = 1;           // 1 runs the serial reference kernels

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Exact event counts for one run.
struct SearchStats {
  std::size_t factorizations_built = 0;
  std::size_t failed_factorizations = 0;
  std::size_t bases_built = 0;
  std::size_t node_solves = 0;
  std::size_t krylov_fallbacks = 0;
  std::size_t regions_tested = 0;
};

}  // namespace rimc
