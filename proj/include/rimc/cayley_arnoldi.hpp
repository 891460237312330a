#pragma once

#include <memory>
#include <span>
#include <utility>

#include "rimc/shifted_factorization.hpp"
#include "rimc/sparse_matrix.hpp"
#include "rimc/types.hpp"

namespace rimc {

/// Arnoldi factorization M V = V H + v_next h_next e_m^T of the Cayley
/// operator M = (A - sigma B)^{-1} B started from b = (A - sigma B)^{-1} f.
///
/// Because K_m(I + (sigma - z) M; b) = K_m(M; b) for every z, one basis
/// answers the shifted systems (I + (sigma - z) M) x = b for all nodes z.
struct KrylovBasis {
  Complex sigma;
  Index m = 0;          // columns actually built
  Matrix V;             // n x m, orthonormal
  RowMatrix H;          // m x m, upper Hessenberg
  double h_max = 0.0;   // max |H_ij|, the scale for singularity tests
  double h_next = 0.0;  // exactly 0 after a lucky breakdown
  Vector v_next;        // empty after a lucky breakdown
  double beta = 0.0;    // ||b||
  Vector b;
  std::shared_ptr<const ShiftedFactorization> factorization;
};

/// Breakdown test: ||w_j|| below this fraction of ||M v_j|| ends the basis.
inline constexpr double kLuckyBreakdownTolerance = 1e-14;

/// Applies M = (A - sigma B)^{-1} B without forming it.
Vector apply_cayley(const Pencil& p, const ShiftedFactorization& fact, const Vector& v);

/// Throws ShiftIsEigenvalue when b is too large for sigma to be resolved
/// from the spectrum.
KrylovBasis build_basis(const Pencil& p, Complex sigma, const Vector& f, Index m);
/// Reuses an existing factorization at fact->sigma().
KrylovBasis build_basis(const Pencil& p, std::shared_ptr<const ShiftedFactorization> fact,
                        const Vector& f, Index m);

struct ShiftedSolve {
  Complex z;
  Vector y;               // reduced solution, length m
  double residual = 0.0;  // |sigma - z| h_next |e_m^T y|
};

/// Solves (I + (sigma - z) H) y = beta e_1 in O(m^2).
/// Throws ReducedSingular when the Hessenberg system is singular.
ShiftedSolve solve_shifted(const KrylovBasis& k, Complex z);

/// V y.
Vector reconstruct(const KrylovBasis& k, const Vector& y);

/// V (sum_j w_j y_j) with a single n x m product.
Vector accumulate_reduced(const KrylovBasis& k, std::span<const std::pair<Complex, Vector>> terms);

}  // namespace rimc
