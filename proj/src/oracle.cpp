#include "rimc/oracle.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "rimc/errors.hpp"
#include "rimc/parallel.hpp"
#include "rimc/shifted_factorization.hpp"

namespace rimc::oracle {

namespace {

using Row = std::map<Index, Complex>;

// a <- alpha a + beta b over sparse rows.
Row combine_rows(const Row& a, const Row& b, Complex alpha, Complex beta) {
  Row out;
  for (const auto& [j, v] : a) out[j] += alpha * v;
  for (const auto& [j, v] : b) out[j] += beta * v;
  return out;
}

// M <- G M G^H.
void rotate(std::vector<Row>& rows, const Rotation& g) {
  const Complex sc = std::conj(g.s);
  Row new_p = combine_rows(rows[g.p], rows[g.q], g.c, g.s);
  Row new_q = combine_rows(rows[g.p], rows[g.q], -sc, g.c);
  rows[g.p] = std::move(new_p);
  rows[g.q] = std::move(new_q);

  // Columns: col_p <- c col_p + conj(s) col_q, col_q <- -s col_p + c col_q.
  for (auto& row : rows) {
    const auto ip = row.find(g.p);
    const auto iq = row.find(g.q);
    if (ip == row.end() && iq == row.end()) continue;
    const Complex vp = ip == row.end() ? Complex(0.0) : ip->second;
    const Complex vq = iq == row.end() ? Complex(0.0) : iq->second;
    row[g.p] = g.c * vp + sc * vq;
    row[g.q] = -g.s * vp + g.c * vq;
  }
}

SparseMatrix to_sparse(const std::vector<Row>& rows) {
  std::vector<SparseMatrix::Triplet> trips;
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) {
    for (const auto& [j, v] : rows[i]) {
      if (v != Complex(0.0)) trips.push_back({i, j, v});
    }
  }
  const auto n = static_cast<Index>(rows.size());
  return SparseMatrix::from_triplets(n, n, trips);
}

}  // namespace

std::vector<Rotation> rotations(const SyntheticSpec& spec) {
  std::vector<Rotation> out;
  const Index n = spec.n();
  if (!spec.transform || n < 2) return out;
  std::mt19937_64 gen(spec.transform->seed);
  std::uniform_int_distribution<Index> index(0, n - 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  out.reserve(spec.transform->rotation_count);
  for (int k = 0; k < spec.transform->rotation_count; ++k) {
    const Index p = index(gen);
    Index q = index(gen);
    while (q == p) q = index(gen);
    const double theta = angle(gen);
    const double phi = angle(gen);
    out.push_back({p, q, std::cos(theta), std::sin(theta) * std::polar(1.0, phi)});
  }
  return out;
}

Vector apply_similarity(std::span<const Rotation> rots, const Vector& v) {
  Vector out = v;
  for (const auto& g : rots) {
    const Complex vp = out[g.p];
    const Complex vq = out[g.q];
    out[g.p] = g.c * vp + g.s * vq;
    out[g.q] = -std::conj(g.s) * vp + g.c * vq;
  }
  return out;
}

Vector apply_similarity_adjoint(std::span<const Rotation> rots, const Vector& v) {
  Vector out = v;
  for (auto it = rots.rbegin(); it != rots.rend(); ++it) {
    const auto& g = *it;
    const Complex vp = out[g.p];
    const Complex vq = out[g.q];
    out[g.p] = g.c * vp - g.s * vq;
    out[g.q] = std::conj(g.s) * vp + g.c * vq;
  }
  return out;
}

Pencil synth_pencil(const SyntheticSpec& spec) {
  const Index n = spec.n();
  const Index finite = static_cast<Index>(spec.eigenvalues.size());
  std::vector<Row> a(static_cast<std::size_t>(n));
  std::vector<Row> b(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    if (i < finite) {
      a[i][i] = spec.eigenvalues[i];
      b[i][i] = 1.0;
    } else {
      a[i][i] = 1.0;
    }
  }
  for (const auto& g : rotations(spec)) {
    rotate(a, g);
    rotate(b, g);
  }
  return make_pencil(to_sparse(a), to_sparse(b));
}

Vector exact_projection(const SyntheticSpec& spec, const Vector& f, Complex center,
                        double radius) {
  if (f.size() != spec.n()) throw DimensionError("probe length does not match spec dimension");
  const auto rots = rotations(spec);
  Vector frame = apply_similarity_adjoint(rots, f);
  const Index finite = static_cast<Index>(spec.eigenvalues.size());
  for (Index i = 0; i < spec.n(); ++i) {
    bool inside = false;
    if (i < finite) {
      const double dist = std::abs(spec.eigenvalues[i] - center);
      if (std::abs(dist - radius) < 1e-12 * radius) {
        throw OnContour("eigenvalue on the contour circle");
      }
      inside = dist < radius;
    }
    if (!inside) frame[i] = 0.0;
  }
  return apply_similarity(rots, frame);
}

Vector exact_projection(const SyntheticSpec& spec, const Vector& f, const Contour& c) {
  return exact_projection(spec, f, c.center, c.radius);
}

Vector brute_projection(const Pencil& p, const Vector& f, Complex center, double radius,
                        int n_large, int threads) {
  if (n_large < 64) throw ConfigError("brute_projection needs at least 64 nodes");
  const Contour c = make_circle(center, radius, n_large);
  std::vector<Vector> xs(static_cast<std::size_t>(n_large));
  for_each_index(n_large, threads,
                 [&](Index j) { xs[j] = solve_node_direct(p, c.nodes[j], f); });
  Vector sum = Vector::Zero(p.n());
  for (Index j = 0; j < n_large; ++j) sum += c.weights[j] * xs[j];
  return sum / Complex(0.0, -2.0 * std::numbers::pi);
}

}  // namespace rimc::oracle
