#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rimc/types.hpp"

namespace rimc {

/// Complex matrix in compressed row storage.
///
/// Column indices are strictly increasing inside every row and no (row, col)
/// pair is stored twice. Instances are immutable once built.
class SparseMatrix {
 public:
  struct Triplet {
    Index row;
    Index col;
    Complex value;
  };

  SparseMatrix() = default;

  /// Assembles from unordered triplets; duplicates are summed.
  static SparseMatrix from_triplets(Index nrows, Index ncols, std::span<const Triplet> entries);
  static SparseMatrix identity(Index n);
  static SparseMatrix diagonal(std::span<const Complex> diag);

  Index rows() const noexcept { return nrows_; }
  Index cols() const noexcept { return ncols_; }
  Index nonzeros() const noexcept { return static_cast<Index>(values_.size()); }
  bool square() const noexcept { return nrows_ == ncols_; }

  std::span<const Index> row_offsets() const noexcept { return row_offsets_; }
  std::span<const Index> col_indices() const noexcept { return col_indices_; }
  std::span<const Complex> values() const noexcept { return values_; }

  /// Stored entries in row-major order.
  std::vector<Triplet> triplets() const;
  Complex coeff(Index row, Index col) const;

  SparseMatrix transpose() const;
  Matrix to_dense() const;

 private:
  SparseMatrix(Index nrows, Index ncols, std::vector<Index> offsets, std::vector<Index> cols,
               std::vector<Complex> values);

  Index nrows_ = 0;
  Index ncols_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<Complex> values_;
};

/// a + alpha * b, same shape required.
SparseMatrix add_scaled(const SparseMatrix& a, const SparseMatrix& b, Complex alpha);

/// y = m * x, rows distributed over OpenMP threads.
Vector matvec(const SparseMatrix& m, const Vector& x);
/// Serial reference for matvec. Bitwise identical results.
Vector matvec_serial(const SparseMatrix& m, const Vector& x);

/// Reads the coordinate flavour of the Matrix Market exchange format.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::filesystem::path& path);
/// Writes `matrix coordinate complex general` with 17 significant digits.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const SparseMatrix& m);

/// The pencil (A, B) of A x = lambda B x. B may be singular.
class Pencil {
 public:
  Pencil(SparseMatrix a, SparseMatrix b);

  const SparseMatrix& a() const noexcept { return a_; }
  const SparseMatrix& b() const noexcept { return b_; }
  Index n() const noexcept { return a_.rows(); }

 private:
  SparseMatrix a_;
  SparseMatrix b_;
};

/// Validates dimensions; an absent `b` becomes the identity.
Pencil make_pencil(SparseMatrix a, std::optional<SparseMatrix> b = std::nullopt);

struct ProbeVector {
  Vector values;
  std::uint64_t seed = 0;
};

/// Unit-norm vector of i.i.d. complex standard normals, reproducible per (n, seed).
ProbeVector random_probe(Index n, std::uint64_t seed);

}  // namespace rimc
