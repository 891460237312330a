#include "rimc/shifted_factorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>

#include "rimc/errors.hpp"

namespace rimc {

namespace {

// Column-compressed view of K = A - sigma B, built as the row-compressed K^T.
struct ColumnMatrix {
  Index n;
  std::vector<Index> offsets;
  std::vector<Index> rows;
  std::vector<Complex> values;
};

ColumnMatrix shifted_columns(const Pencil& p, Complex sigma) {
  const SparseMatrix kt = add_scaled(p.a(), p.b(), -sigma).transpose();
  return ColumnMatrix{kt.rows(),
                      {kt.row_offsets().begin(), kt.row_offsets().end()},
                      {kt.col_indices().begin(), kt.col_indices().end()},
                      {kt.values().begin(), kt.values().end()}};
}

std::vector<Index> colamd_order(const ColumnMatrix& k) {
  using Pattern = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  std::vector<Eigen::Triplet<double, int>> trips;
  trips.reserve(k.rows.size());
  for (Index j = 0; j < k.n; ++j) {
    for (Index p = k.offsets[j]; p < k.offsets[j + 1]; ++p) {
      trips.emplace_back(static_cast<int>(k.rows[p]), static_cast<int>(j), 1.0);
    }
  }
  Pattern pattern(k.n, k.n);
  pattern.setFromTriplets(trips.begin(), trips.end());
  pattern.makeCompressed();

  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
  Eigen::COLAMDOrdering<int> ordering;
  ordering(pattern, perm);

  // Column j of K moves to position perm(j).
  std::vector<Index> order(static_cast<std::size_t>(k.n));
  for (Index j = 0; j < k.n; ++j) order[perm.indices()(j)] = j;
  return order;
}

}  // namespace

ShiftedFactorization::ShiftedFactorization(const Pencil& p, Complex sigma)
    : sigma_(sigma), n_(p.n()) {
  const ColumnMatrix k = shifted_columns(p, sigma);
  const Index n = n_;
  col_order_ = colamd_order(k);
  row_pinv_.assign(static_cast<std::size_t>(n), -1);

  double entry_scale = 0.0;
  for (const auto& v : k.values) entry_scale = std::max(entry_scale, std::abs(v));

  l_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  u_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  l_rows_.reserve(k.rows.size() * 2);
  l_values_.reserve(k.rows.size() * 2);
  u_rows_.reserve(k.rows.size() * 2);
  u_values_.reserve(k.rows.size() * 2);

  // Left-looking Gilbert-Peierls elimination. L keeps original row indices
  // until the end so the reach computation can map them through row_pinv_.
  std::vector<Complex> x(static_cast<std::size_t>(n), Complex(0.0));
  std::vector<Index> reach(static_cast<std::size_t>(n));
  std::vector<Index> stack(static_cast<std::size_t>(n));
  std::vector<Index> next_edge(static_cast<std::size_t>(n));
  std::vector<Index> mark(static_cast<std::size_t>(n), -1);
  min_pivot_ = std::numeric_limits<double>::infinity();

  for (Index col = 0; col < n; ++col) {
    l_offsets_[col] = static_cast<Index>(l_rows_.size());
    u_offsets_[col] = static_cast<Index>(u_rows_.size());
    const Index source = col_order_[col];

    // Nonzero pattern of L \ K(:, source) in topological order: reach[top..n).
    Index top = n;
    for (Index e = k.offsets[source]; e < k.offsets[source + 1]; ++e) {
      const Index start = k.rows[e];
      if (mark[start] == col) continue;
      Index head = 0;
      stack[0] = start;
      while (head >= 0) {
        const Index node = stack[head];
        const Index pivot_col = row_pinv_[node];
        if (mark[node] != col) {
          mark[node] = col;
          next_edge[head] = pivot_col < 0 ? 0 : l_offsets_[pivot_col] + 1;
        }
        const Index edge_end = pivot_col < 0 ? 0 : l_offsets_[pivot_col + 1];
        bool done = true;
        for (Index q = next_edge[head]; q < edge_end; ++q) {
          const Index child = l_rows_[q];
          if (mark[child] == col) continue;
          next_edge[head] = q + 1;
          stack[++head] = child;
          done = false;
          break;
        }
        if (done) {
          --head;
          reach[--top] = node;
        }
      }
    }

    // Sparse triangular solve.
    for (Index q = top; q < n; ++q) x[reach[q]] = Complex(0.0);
    for (Index e = k.offsets[source]; e < k.offsets[source + 1]; ++e) x[k.rows[e]] = k.values[e];
    for (Index q = top; q < n; ++q) {
      const Index row = reach[q];
      const Index pivot_col = row_pinv_[row];
      if (pivot_col < 0) continue;
      const Complex xr = x[row];
      for (Index e = l_offsets_[pivot_col] + 1; e < l_offsets_[pivot_col + 1]; ++e) {
        x[l_rows_[e]] -= l_values_[e] * xr;
      }
    }

    // Partial pivoting over rows not yet pivotal; first maximum in reach order wins.
    Index pivot_row = -1;
    double pivot_mag = -1.0;
    for (Index q = top; q < n; ++q) {
      const Index row = reach[q];
      if (row_pinv_[row] < 0) {
        const double mag = std::abs(x[row]);
        if (mag > pivot_mag) {
          pivot_mag = mag;
          pivot_row = row;
        }
      } else {
        u_rows_.push_back(row_pinv_[row]);
        u_values_.push_back(x[row]);
      }
    }
    const double reference = std::max(entry_scale, max_pivot_);
    if (pivot_row < 0 || !(pivot_mag > kPivotTolerance * reference)) {
      throw ShiftIsEigenvalue(sigma);
    }
    max_pivot_ = std::max(max_pivot_, pivot_mag);
    min_pivot_ = std::min(min_pivot_, pivot_mag);

    const Complex pivot = x[pivot_row];
    u_rows_.push_back(col);
    u_values_.push_back(pivot);
    row_pinv_[pivot_row] = col;
    l_rows_.push_back(pivot_row);
    l_values_.push_back(Complex(1.0));
    for (Index q = top; q < n; ++q) {
      const Index row = reach[q];
      if (row_pinv_[row] < 0) {
        l_rows_.push_back(row);
        l_values_.push_back(x[row] / pivot);
      }
      x[row] = Complex(0.0);
    }
  }
  l_offsets_[n] = static_cast<Index>(l_rows_.size());
  u_offsets_[n] = static_cast<Index>(u_rows_.size());
  for (auto& row : l_rows_) row = row_pinv_[row];
  if (n == 0) min_pivot_ = max_pivot_ = 1.0;
  scale_ = std::max({entry_scale, max_pivot_, 1e-300});
}

Vector ShiftedFactorization::solve(const Vector& v) const {
  if (v.size() != n_) {
    throw DimensionError("resolvent: vector length " + std::to_string(v.size()) + " != " +
                         std::to_string(n_));
  }
  Vector y(n_);
  for (Index i = 0; i < n_; ++i) y[row_pinv_[i]] = v[i];
  for (Index j = 0; j < n_; ++j) {
    const Complex yj = y[j];
    for (Index e = l_offsets_[j] + 1; e < l_offsets_[j + 1]; ++e) y[l_rows_[e]] -= l_values_[e] * yj;
  }
  for (Index j = n_ - 1; j >= 0; --j) {
    const Index diag = u_offsets_[j + 1] - 1;
    y[j] /= u_values_[diag];
    const Complex yj = y[j];
    for (Index e = u_offsets_[j]; e < diag; ++e) y[u_rows_[e]] -= u_values_[e] * yj;
  }
  Vector x(n_);
  for (Index k = 0; k < n_; ++k) x[col_order_[k]] = y[k];
  return x;
}

ShiftedFactorization factorize_shift(const Pencil& p, Complex sigma) {
  return ShiftedFactorization(p, sigma);
}

Vector apply_resolvent(const ShiftedFactorization& f, const Vector& v) { return f.solve(v); }

Vector solve_node_direct(const Pencil& p, Complex z, const Vector& f) {
  const ShiftedFactorization fact(p, z);
  Vector x = fact.solve(f);
  if (fact.near_singular(f.norm(), x.norm())) throw ShiftIsEigenvalue(z);
  return x;
}

}  // namespace rimc
