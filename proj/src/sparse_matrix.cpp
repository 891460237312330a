#include "rimc/sparse_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rimc/errors.hpp"

namespace rimc {

SparseMatrix::SparseMatrix(Index nrows, Index ncols, std::vector<Index> offsets,
                           std::vector<Index> cols, std::vector<Complex> values)
    : nrows_(nrows),
      ncols_(ncols),
      row_offsets_(std::move(offsets)),
      col_indices_(std::move(cols)),
      values_(std::move(values)) {}

SparseMatrix SparseMatrix::from_triplets(Index nrows, Index ncols,
                                         std::span<const Triplet> entries) {
  if (nrows < 0 || ncols < 0) throw DimensionError("negative matrix dimension");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
      throw DimensionError("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                           ") outside " + std::to_string(nrows) + "x" + std::to_string(ncols));
    }
  }

  // Counting sort by row, then sort each row by column and merge duplicates.
  std::vector<Index> counts(static_cast<std::size_t>(nrows) + 1, 0);
  for (const auto& t : entries) ++counts[t.row + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  std::vector<std::pair<Index, Complex>> bucket(entries.size());
  std::vector<Index> fill(counts.begin(), counts.end() - 1);
  for (const auto& t : entries) bucket[fill[t.row]++] = {t.col, t.value};

  std::vector<Index> offsets(static_cast<std::size_t>(nrows) + 1, 0);
  std::vector<Index> cols;
  std::vector<Complex> values;
  cols.reserve(entries.size());
  values.reserve(entries.size());
  for (Index i = 0; i < nrows; ++i) {
    auto first = bucket.begin() + counts[i];
    auto last = bucket.begin() + counts[i + 1];
    std::stable_sort(first, last, [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto it = first; it != last; ++it) {
      if (!cols.empty() && static_cast<Index>(cols.size()) > offsets[i] && cols.back() == it->first) {
        values.back() += it->second;
      } else {
        cols.push_back(it->first);
        values.push_back(it->second);
      }
    }
    offsets[i + 1] = static_cast<Index>(cols.size());
  }
  return SparseMatrix(nrows, ncols, std::move(offsets), std::move(cols), std::move(values));
}

SparseMatrix SparseMatrix::identity(Index n) {
  std::vector<Complex> ones(static_cast<std::size_t>(n), Complex(1.0));
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const Complex> diag) {
  const auto n = static_cast<Index>(diag.size());
  std::vector<Index> offsets(diag.size() + 1);
  std::iota(offsets.begin(), offsets.end(), Index{0});
  std::vector<Index> cols(diag.size());
  std::iota(cols.begin(), cols.end(), Index{0});
  return SparseMatrix(n, n, std::move(offsets), std::move(cols),
                      std::vector<Complex>(diag.begin(), diag.end()));
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (Index i = 0; i < nrows_; ++i) {
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      out.push_back({i, col_indices_[k], values_[k]});
    }
  }
  return out;
}

Complex SparseMatrix::coeff(Index row, Index col) const {
  if (row < 0 || row >= nrows_ || col < 0 || col >= ncols_) {
    throw DimensionError("coefficient index out of range");
  }
  const auto first = col_indices_.begin() + row_offsets_[row];
  const auto last = col_indices_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return Complex(0.0);
  return values_[it - col_indices_.begin()];
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Index> offsets(static_cast<std::size_t>(ncols_) + 1, 0);
  for (Index c : col_indices_) ++offsets[c + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Index> fill(offsets.begin(), offsets.end() - 1);
  std::vector<Index> cols(values_.size());
  std::vector<Complex> values(values_.size());
  // Rows are visited in increasing order, so each transposed row comes out sorted.
  for (Index i = 0; i < nrows_; ++i) {
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const Index dst = fill[col_indices_[k]]++;
      cols[dst] = i;
      values[dst] = values_[k];
    }
  }
  return SparseMatrix(ncols_, nrows_, std::move(offsets), std::move(cols), std::move(values));
}

Matrix SparseMatrix::to_dense() const {
  Matrix dense = Matrix::Zero(nrows_, ncols_);
  for (Index i = 0; i < nrows_; ++i) {
    for (Index k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      dense(i, col_indices_[k]) = values_[k];
    }
  }
  return dense;
}

SparseMatrix add_scaled(const SparseMatrix& a, const SparseMatrix& b, Complex alpha) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("add_scaled: shape mismatch");
  }
  const auto ao = a.row_offsets();
  const auto ac = a.col_indices();
  const auto av = a.values();
  const auto bo = b.row_offsets();
  const auto bc = b.col_indices();
  const auto bv = b.values();

  std::vector<SparseMatrix::Triplet> merged;
  merged.reserve(static_cast<std::size_t>(a.nonzeros() + b.nonzeros()));
  for (Index i = 0; i < a.rows(); ++i) {
    Index p = ao[i];
    Index q = bo[i];
    while (p < ao[i + 1] || q < bo[i + 1]) {
      if (q == bo[i + 1] || (p < ao[i + 1] && ac[p] < bc[q])) {
        merged.push_back({i, ac[p], av[p]});
        ++p;
      } else if (p == ao[i + 1] || bc[q] < ac[p]) {
        merged.push_back({i, bc[q], alpha * bv[q]});
        ++q;
      } else {
        merged.push_back({i, ac[p], av[p] + alpha * bv[q]});
        ++p;
        ++q;
      }
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), merged);
}

namespace {

void check_matvec_dims(const SparseMatrix& m, const Vector& x) {
  if (x.size() != m.cols()) {
    throw DimensionError("matvec: vector length " + std::to_string(x.size()) + " != " +
                         std::to_string(m.cols()) + " columns");
  }
}

inline Complex row_dot(const SparseMatrix& m, const Vector& x, Index i) {
  const auto offsets = m.row_offsets();
  const auto cols = m.col_indices();
  const auto vals = m.values();
  Complex sum(0.0);
  for (Index k = offsets[i]; k < offsets[i + 1]; ++k) sum += vals[k] * x[cols[k]];
  return sum;
}

}  // namespace

Vector matvec(const SparseMatrix& m, const Vector& x) {
  check_matvec_dims(m, x);
  Vector y(m.rows());
  const Index n = m.rows();
#pragma omp parallel for schedule(static) if (m.nonzeros() > 20000)
  for (Index i = 0; i < n; ++i) y[i] = row_dot(m, x, i);
  return y;
}

Vector matvec_serial(const SparseMatrix& m, const Vector& x) {
  check_matvec_dims(m, x);
  Vector y(m.rows());
  for (Index i = 0; i < m.rows(); ++i) y[i] = row_dot(m, x, i);
  return y;
}

}  // namespace rimc
