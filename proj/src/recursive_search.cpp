#include "rimc/recursive_search.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rimc/errors.hpp"

namespace rimc {

namespace {

bool lex_less(Complex a, Complex b) {
  return std::pair(a.real(), a.imag()) < std::pair(b.real(), b.imag());
}

void seed_shifts(const Pencil& p, const Vector& f, const Region& root, ShiftCache& cache,
                 const Config& cfg, SearchStats& stats) {
  const int g = cfg.initial_shift_grid;
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      const double x = (2.0 * a + 1.0) / g - 1.0;
      const double y = (2.0 * b + 1.0) / g - 1.0;
      ensure_basis(cache, p, f, root.center + root.half_side * Complex(x, y), cfg, &stats);
    }
  }
}

std::vector<Indicator> evaluate(const Pencil& p, const Vector& f,
                                const std::vector<Region>& frontier, ShiftCache& cache,
                                const Config& cfg, SearchStats& stats) {
  if (!cfg.legacy_indicator) return indicators(p, f, frontier, cache, cfg, &stats);
  std::vector<Indicator> out;
  out.reserve(frontier.size());
  for (const auto& r : frontier) out.push_back(legacy_indicator(p, f, r, cache, cfg, &stats));
  return out;
}

std::string describe(const Region& r) {
  std::ostringstream os;
  os.precision(17);
  os << "region center " << r.center << ", half side " << r.half_side << ", depth " << r.depth;
  return os.str();
}

}  // namespace

SearchResult rim_c(const Pencil& p, const Rectangle& bounds, const Config& cfg) {
  cfg.validate();
  if (!bounds.valid()) throw ConfigError("search rectangle must satisfy xmin < xmax, ymin < ymax");

  const Region root = bounds.bounding_square();
  const Vector f = random_probe(p.n(), cfg.seed).values;

  SearchResult result;
  SearchStats& stats = result.stats;
  ShiftCache cache(cfg.shift_budget);
  if (cfg.krylov_reuse) seed_shifts(p, f, root, cache, cfg, stats);

  std::vector<EigenvalueEstimate> found;
  std::vector<Region> frontier{root};
  while (!frontier.empty()) {
    if (frontier.front().depth > cfg.max_depth) {
      throw InternalError("recursion exceeded max_depth at " + describe(frontier.front()));
    }
    std::vector<Indicator> inds;
    try {
      inds = evaluate(p, f, frontier, cache, cfg, stats);
    } catch (const ShiftBudgetExceeded& e) {
      throw ShiftBudgetExceeded(std::string(e.what()) + " while testing " +
                                std::to_string(frontier.size()) + " regions at depth " +
                                std::to_string(frontier.front().depth));
    }

    std::vector<Region> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const Region& r = frontier[i];
      result.tested.push_back({r, inds[i]});
      if (!inds[i].admissible) continue;
      if (r.size() > cfg.d0) {
        const auto children = subdivide(r);
        next.insert(next.end(), children.begin(), children.end());
      } else if (bounds.contains(r.center, cfg.d0)) {
        found.push_back({r.center, r.half_side, inds[i].value, r.depth,
                         bounds.distance_to_boundary(r.center) < 10.0 * cfg.d0});
      }
    }
    frontier = std::move(next);
  }

  result.eigenvalues = dedup(std::move(found), 4.0 * cfg.d0);
  result.bases = cache.snapshot();
  return result;
}

SearchResult rim_c(const Pencil& p, const Region& root, const Config& cfg) {
  if (!(root.half_side > 0.0)) throw ConfigError("root region must have positive size");
  return rim_c(p, Rectangle::of(root), cfg);
}

std::vector<EigenvalueEstimate> dedup(std::vector<EigenvalueEstimate> estimates, double tol) {
  const std::size_t k = estimates.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };

  // Sweep in order of real part; only pairs closer than tol in Re can link.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(estimates[a].value, estimates[b].value);
  });
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const auto& ea = estimates[order[a]];
      const auto& eb = estimates[order[b]];
      if (eb.value.real() - ea.value.real() > tol) break;
      if (std::abs(ea.value - eb.value) <= tol) parent[find(order[a])] = find(order[b]);
    }
  }

  std::vector<std::ptrdiff_t> best(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t root = find(i);
    if (best[root] < 0) {
      best[root] = static_cast<std::ptrdiff_t>(i);
      continue;
    }
    const auto& cur = estimates[best[root]];
    const auto& cand = estimates[i];
    if (cand.indicator_value > cur.indicator_value ||
        (cand.indicator_value == cur.indicator_value && lex_less(cand.value, cur.value))) {
      best[root] = static_cast<std::ptrdiff_t>(i);
    }
  }

  std::vector<EigenvalueEstimate> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (best[i] >= 0) out.push_back(estimates[best[i]]);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return lex_less(a.value, b.value); });
  return out;
}

}  // namespace rimc
