#pragma once

#include <vector>

#include "rimc/config.hpp"
#include "rimc/region.hpp"
#include "rimc/spectral_projector.hpp"
#include "rimc/sparse_matrix.hpp"

namespace rimc {

struct EigenvalueEstimate {
  Complex value;             // center of the final box
  double box_half_side = 0.0;
  double indicator_value = 0.0;
  int depth = 0;
  bool boundary = false;     // within 10 d0 of the search-rectangle edge
};

struct RegionRecord {
  Region region;
  Indicator indicator;
};

struct SearchResult {
  std::vector<EigenvalueEstimate> eigenvalues;  // ascending (Re, Im)
  SearchStats stats;
  std::vector<RegionRecord> tested;             // every region whose indicator was computed
  std::vector<BasisPtr> bases;                  // final shift cache, insertion order
};

/// Recursive contour-integral search for all eigenvalues of (A, B) inside the
/// square `root`: admissible squares are split into four until their side is
/// at most cfg.d0, and the centers of the surviving squares are reported.
///
/// Squares are processed one tree level at a time and all quadrature nodes of
/// a level are solved as one batch, so the output does not depend on
/// cfg.threads.
SearchResult rim_c(const Pencil& p, const Region& root, const Config& cfg);

/// Rectangular search: runs on the bounding square and keeps the estimates
/// that fall inside the rectangle (within d0).
SearchResult rim_c(const Pencil& p, const Rectangle& bounds, const Config& cfg);

/// Single-linkage clustering at distance tol; each cluster keeps the member
/// with the largest indicator (ties: smallest (Re, Im)).
std::vector<EigenvalueEstimate> dedup(std::vector<EigenvalueEstimate> estimates, double tol);

}  // namespace rimc
