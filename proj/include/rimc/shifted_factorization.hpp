#pragma once

#include <vector>

#include "rimc/sparse_matrix.hpp"
#include "rimc/types.hpp"

namespace rimc {

/// Sparse LU factors of A - sigma*B with a COLAMD column ordering and row
/// partial pivoting, P (A - sigma B) Q = L U. Immutable; concurrent solves are
/// safe.
class ShiftedFactorization {
 public:
  /// Relative pivot threshold below which the shift is declared an eigenvalue.
  static constexpr double kPivotTolerance = 1e-14;

  ShiftedFactorization(const Pencil& p, Complex sigma);

  Complex sigma() const noexcept { return sigma_; }
  Index n() const noexcept { return n_; }
  Index factor_nonzeros() const noexcept {
    return static_cast<Index>(l_values_.size() + u_values_.size());
  }
  /// max |pivot| / min |pivot|, a cheap lower bound on the condition number.
  double pivot_ratio() const noexcept { return max_pivot_ / min_pivot_; }

  /// True when x = (A - sigma B)^{-1} v is amplified past what the pivot
  /// tolerance can resolve. Pivots do not always expose a singular matrix;
  /// the size of a solution does.
  bool near_singular(double v_norm, double x_norm) const noexcept {
    return kPivotTolerance * scale_ * x_norm > v_norm;
  }

  /// Solves (A - sigma B) x = v.
  Vector solve(const Vector& v) const;

 private:
  Complex sigma_;
  Index n_ = 0;
  double max_pivot_ = 0.0;
  double min_pivot_ = 0.0;
  double scale_ = 1.0;  // max(max |entry|, max |pivot|)

  std::vector<Index> col_order_;  // q: position k holds original column q[k]
  std::vector<Index> row_pinv_;   // original row i is pivot row row_pinv_[i]

  // Unit lower factor, column-compressed, diagonal stored first.
  std::vector<Index> l_offsets_;
  std::vector<Index> l_rows_;
  std::vector<Complex> l_values_;
  // Upper factor, column-compressed, diagonal stored last.
  std::vector<Index> u_offsets_;
  std::vector<Index> u_rows_;
  std::vector<Complex> u_values_;
};

/// Factorizes A - sigma*B; throws ShiftIsEigenvalue on a (near) zero pivot.
ShiftedFactorization factorize_shift(const Pencil& p, Complex sigma);

/// x = (A - sigma B)^{-1} v.
Vector apply_resolvent(const ShiftedFactorization& f, const Vector& v);

/// x = (A - z B)^{-1} f through a fresh factorization at z. Throws
/// ShiftIsEigenvalue when z cannot be told apart from an eigenvalue.
Vector solve_node_direct(const Pencil& p, Complex z, const Vector& f);

}  // namespace rimc
