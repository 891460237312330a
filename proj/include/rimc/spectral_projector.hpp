#pragma once

#include <span>
#include <vector>

#include "rimc/config.hpp"
#include "rimc/contour.hpp"
#include "rimc/region.hpp"
#include "rimc/shift_cache.hpp"
#include "rimc/sparse_matrix.hpp"

namespace rimc {

/// Projection norms below this are treated as zero.
inline constexpr double kUnderflowFloor = 1e-300;

struct ProjectionResult {
  Vector vector;                   // approximation of P f
  Index n_nodes = 0;
  double max_node_residual = 0.0;  // worst accepted Krylov residual
  std::size_t bases_used = 0;
};

struct Indicator {
  double value = 0.0;
  double coarse_norm = 0.0;  // |P f| with n0 nodes (legacy: |P f|)
  double fine_norm = 0.0;    // |P f| with 2 n0 nodes (legacy: |P (Pf/|Pf|)|)
  bool admissible = false;
};

/// Trapezoidal approximation of the spectral projection of f onto the
/// eigenspace enclosed by the contour:
///   P f ~ -(1/2 pi i) sum_j w_j x_j,  (A - z_j B) x_j = f.
/// Node systems are answered from the nearest cached Krylov basis; a node whose
/// residual exceeds cfg.eps gets a fresh basis at the node itself.
ProjectionResult project(const Pencil& p, const Vector& f, const Contour& c, ShiftCache& cache,
                         const Config& cfg, SearchStats* stats = nullptr);

/// delta_S = |P f|_{2 n0}| / |P f|_{n0}| on the circle around r. The coarse
/// sum reuses the even-indexed fine nodes.
Indicator indicator(const Pencil& p, const Vector& f, const Region& r, ShiftCache& cache,
                    const Config& cfg, SearchStats* stats = nullptr);

/// Batched indicator: all nodes of all regions are solved together, so the
/// result does not depend on cfg.threads.
std::vector<Indicator> indicators(const Pencil& p, const Vector& f, std::span<const Region> regions,
                                  ShiftCache& cache, const Config& cfg,
                                  SearchStats* stats = nullptr);

/// Double-projection indicator |P(Pf/|Pf|)| with 2 n0 nodes; admissible when
/// above cfg.legacy_threshold. The second right-hand side gets its own bases,
/// reusing factorizations already present in `cache`.
Indicator legacy_indicator(const Pencil& p, const Vector& f, const Region& r, ShiftCache& cache,
                           const Config& cfg, SearchStats* stats = nullptr);

}  // namespace rimc
