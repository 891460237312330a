#include "rimc/spectral_projector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "rimc/errors.hpp"
#include "rimc/parallel.hpp"

namespace rimc {

namespace {

struct QuadNode {
  Complex z;
  Complex center;  // contour center, for the radial nudge
  double region_size;
};

struct NodeSolution {
  BasisPtr basis;   // Krylov path
  Vector y;
  Vector x;         // direct path
  double residual = 0.0;
};

std::optional<ShiftedSolve> try_solve(const KrylovBasis& k, Complex z) {
  try {
    return solve_shifted(k, z);
  } catch (const ReducedSingular&) {
    return std::nullopt;
  }
}

Complex nudge(const QuadNode& node) {
  const Complex radial = node.z - node.center;
  const double len = std::abs(radial);
  const Complex dir = len > 0.0 ? radial / len : Complex(1.0, 0.0);
  // Deep regions are so small that a purely relative step would not move z at all.
  const double step = std::max(1e-8 * node.region_size, 1e-12 * std::max(1.0, std::abs(node.z)));
  return node.z + step * dir;
}

NodeSolution solve_direct(const Pencil& p, const Vector& f, const QuadNode& node,
                          std::size_t& factorizations) {
  ++factorizations;
  try {
    return NodeSolution{nullptr, {}, solve_node_direct(p, node.z, f), 0.0};
  } catch (const ShiftIsEigenvalue&) {
    ++factorizations;
    return NodeSolution{nullptr, {}, solve_node_direct(p, nudge(node), f), 0.0};
  }
}

// Serial fallback for one node whose first attempt was rejected.
NodeSolution resolve_node(const Pencil& p, const Vector& f, const QuadNode& node,
                          ShiftCache& cache, const Config& cfg, SearchStats* stats,
                          const ShiftCache* donor, const KrylovBasis* rejected) {
  if (stats) ++stats->krylov_fallbacks;
  // The cache may have grown since the parallel pass.
  if (cache.size() > 0) {
    auto nearest = select_basis(cache, node.z);
    if (nearest.get() != rejected) {
      if (auto s = try_solve(*nearest, node.z); s && s->residual <= cfg.eps) {
        return NodeSolution{nearest, std::move(s->y), {}, s->residual};
      }
    }
  }
  // A basis at sigma = z answers the node exactly (x = b).
  auto fresh = ensure_basis(cache, p, f, node.z, cfg, stats, donor);
  if (auto s = try_solve(*fresh, node.z); s && s->residual <= cfg.eps) {
    return NodeSolution{fresh, std::move(s->y), {}, s->residual};
  }
  // z sits on the spectrum: move the node outward once.
  const Complex moved = nudge(node);
  auto retry = ensure_basis(cache, p, f, moved, cfg, stats, donor);
  auto s = try_solve(*retry, moved);
  if (!s) throw ReducedSingular(moved);
  return NodeSolution{retry, std::move(s->y), {}, s->residual};
}

std::vector<NodeSolution> solve_nodes(const Pencil& p, const Vector& f,
                                      std::span<const QuadNode> nodes, ShiftCache& cache,
                                      const Config& cfg, SearchStats* stats,
                                      const ShiftCache* donor) {
  const Index count = static_cast<Index>(nodes.size());
  std::vector<NodeSolution> out(nodes.size());
  if (stats) stats->node_solves += nodes.size();

  if (!cfg.krylov_reuse) {
    std::vector<std::size_t> facts(nodes.size(), 0);
    for_each_index(count, cfg.threads, [&](Index j) {
      out[j] = solve_direct(p, f, nodes[j], facts[j]);
    });
    if (stats) {
      for (auto c : facts) stats->factorizations_built += c;
    }
    return out;
  }

  // Pass 1: every node against a frozen snapshot of the cache.
  const auto snapshot = cache.snapshot();
  std::vector<char> accepted(nodes.size(), 0);
  if (!snapshot.empty()) {
    for_each_index(count, cfg.threads, [&](Index j) {
      auto basis = select_basis(snapshot, nodes[j].z);
      if (auto s = try_solve(*basis, nodes[j].z); s) {
        out[j] = NodeSolution{basis, std::move(s->y), {}, s->residual};
        accepted[j] = s->residual <= cfg.eps;
      } else {
        out[j].basis = basis;
      }
    });
  }

  // Pass 2: rejected nodes in index order; new bases are inserted serially.
  for (Index j = 0; j < count; ++j) {
    if (accepted[j]) continue;
    try {
      out[j] = resolve_node(p, f, nodes[j], cache, cfg, stats, donor, out[j].basis.get());
    } catch (const ShiftBudgetExceeded& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " (node " << nodes[j].z << " of the region centered at "
         << nodes[j].center << " with side " << nodes[j].region_size << ")";
      throw ShiftBudgetExceeded(os.str());
    }
  }
  return out;
}

// -(1/2 pi i) sum_j w_j x_j over the selected nodes. Reduced vectors are
// summed per basis first so that each basis costs a single V * s product.
Vector combine(const std::vector<NodeSolution>& sols, std::span<const Index> ids,
               std::span<const Complex> weights, Index n) {
  std::vector<const KrylovBasis*> order;
  std::vector<Vector> reduced;
  Vector direct = Vector::Zero(n);
  for (std::size_t t = 0; t < ids.size(); ++t) {
    const NodeSolution& s = sols[ids[t]];
    if (!s.basis) {
      direct += weights[t] * s.x;
      continue;
    }
    const auto it = std::find(order.begin(), order.end(), s.basis.get());
    if (it == order.end()) {
      order.push_back(s.basis.get());
      reduced.push_back(weights[t] * s.y);
    } else {
      reduced[it - order.begin()] += weights[t] * s.y;
    }
  }
  Vector total = direct;
  for (std::size_t b = 0; b < order.size(); ++b) {
    if (order[b]->m > 0) total += order[b]->V * reduced[b];
  }
  return total / Complex(0.0, -2.0 * std::numbers::pi);
}

std::size_t distinct_bases(const std::vector<NodeSolution>& sols) {
  std::vector<const KrylovBasis*> seen;
  for (const auto& s : sols) {
    if (s.basis && std::find(seen.begin(), seen.end(), s.basis.get()) == seen.end()) {
      seen.push_back(s.basis.get());
    }
  }
  return seen.size();
}

ProjectionResult project_with(const Pencil& p, const Vector& f, const Contour& c,
                              ShiftCache& cache, const Config& cfg, SearchStats* stats,
                              const ShiftCache* donor) {
  if (f.size() != p.n()) throw DimensionError("probe length does not match pencil dimension");
  const double size = c.radius * std::numbers::sqrt2;
  std::vector<QuadNode> nodes;
  nodes.reserve(c.nodes.size());
  for (const auto& z : c.nodes) nodes.push_back({z, c.center, size});

  const auto sols = solve_nodes(p, f, nodes, cache, cfg, stats, donor);
  std::vector<Index> ids(nodes.size());
  for (std::size_t j = 0; j < ids.size(); ++j) ids[j] = static_cast<Index>(j);

  ProjectionResult r;
  r.vector = combine(sols, ids, c.weights, p.n());
  r.n_nodes = c.n();
  for (const auto& s : sols) r.max_node_residual = std::max(r.max_node_residual, s.residual);
  r.bases_used = distinct_bases(sols);
  return r;
}

Indicator make_indicator(double coarse, double fine, double threshold) {
  Indicator ind;
  ind.coarse_norm = coarse;
  ind.fine_norm = fine;
  ind.value = coarse < kUnderflowFloor ? 0.0 : fine / coarse;
  ind.admissible = ind.value > threshold;
  return ind;
}

}  // namespace

ProjectionResult project(const Pencil& p, const Vector& f, const Contour& c, ShiftCache& cache,
                         const Config& cfg, SearchStats* stats) {
  return project_with(p, f, c, cache, cfg, stats, nullptr);
}

std::vector<Indicator> indicators(const Pencil& p, const Vector& f, std::span<const Region> regions,
                                  ShiftCache& cache, const Config& cfg, SearchStats* stats) {
  if (cfg.n0 < 2) throw ConfigError("quadrature count n0 must be at least 2");
  if (f.size() != p.n()) throw DimensionError("probe length does not match pencil dimension");
  const int fine_n = 2 * cfg.n0;

  std::vector<Contour> fine;
  std::vector<Contour> coarse;
  std::vector<QuadNode> nodes;
  fine.reserve(regions.size());
  coarse.reserve(regions.size());
  nodes.reserve(regions.size() * fine_n);
  for (const auto& r : regions) {
    fine.push_back(make_contour(r, fine_n));
    coarse.push_back(make_contour(r, cfg.n0));
    for (const auto& z : fine.back().nodes) nodes.push_back({z, r.center, r.size()});
  }
  if (stats) stats->regions_tested += regions.size();

  const auto sols = solve_nodes(p, f, nodes, cache, cfg, stats, nullptr);

  std::vector<Indicator> out(regions.size());
  for_each_index(static_cast<Index>(regions.size()), cfg.threads, [&](Index r) {
    const Index base = r * fine_n;
    std::vector<Index> all(fine_n);
    std::vector<Index> even(cfg.n0);
    for (int j = 0; j < fine_n; ++j) all[j] = base + j;
    for (int j = 0; j < cfg.n0; ++j) even[j] = base + 2 * j;
    const double fine_norm = combine(sols, all, fine[r].weights, p.n()).norm();
    const double coarse_norm = combine(sols, even, coarse[r].weights, p.n()).norm();
    out[r] = make_indicator(coarse_norm, fine_norm, cfg.delta0);
  });
  return out;
}

Indicator indicator(const Pencil& p, const Vector& f, const Region& r, ShiftCache& cache,
                    const Config& cfg, SearchStats* stats) {
  return indicators(p, f, std::span<const Region>(&r, 1), cache, cfg, stats).front();
}

Indicator legacy_indicator(const Pencil& p, const Vector& f, const Region& r, ShiftCache& cache,
                           const Config& cfg, SearchStats* stats) {
  if (cfg.n0 < 2) throw ConfigError("quadrature count n0 must be at least 2");
  const Contour c = make_contour(r, 2 * cfg.n0);
  if (stats) ++stats->regions_tested;

  const ProjectionResult first = project_with(p, f, c, cache, cfg, stats, nullptr);
  const double first_norm = first.vector.norm();
  Indicator ind;
  ind.coarse_norm = first_norm;
  if (first_norm < kUnderflowFloor) return ind;

  const Vector g = first.vector / first_norm;
  ShiftCache second_rhs(cfg.shift_budget);
  if (cfg.krylov_reuse && cache.size() > 0) {
    ensure_basis(second_rhs, p, g, select_basis(cache, r.center)->sigma, cfg, stats, &cache);
  }
  const ProjectionResult second = project_with(p, g, c, second_rhs, cfg, stats, &cache);
  ind.fine_norm = second.vector.norm();
  ind.value = ind.fine_norm;
  ind.admissible = ind.value > cfg.legacy_threshold;
  return ind;
}

}  // namespace rimc
