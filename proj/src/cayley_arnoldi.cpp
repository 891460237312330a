#include "rimc/cayley_arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rimc/errors.hpp"

namespace rimc {

Vector apply_cayley(const Pencil& p, const ShiftedFactorization& fact, const Vector& v) {
  return fact.solve(matvec(p.b(), v));
}

KrylovBasis build_basis(const Pencil& p, Complex sigma, const Vector& f, Index m) {
  return build_basis(p, std::make_shared<const ShiftedFactorization>(p, sigma), f, m);
}

KrylovBasis build_basis(const Pencil& p, std::shared_ptr<const ShiftedFactorization> fact,
                        const Vector& f, Index m) {
  if (m < 1) throw ConfigError("Krylov dimension must be at least 1");
  if (f.size() != p.n()) throw DimensionError("probe length does not match pencil dimension");

  const Index n = p.n();
  const Index limit = std::min(m, n);

  KrylovBasis k;
  k.sigma = fact->sigma();
  k.b = fact->solve(f);
  k.beta = k.b.norm();
  if (fact->near_singular(f.norm(), k.beta)) throw ShiftIsEigenvalue(fact->sigma());
  k.factorization = std::move(fact);
  if (k.beta == 0.0) {
    k.V.resize(n, 0);
    k.H.resize(0, 0);
    return k;
  }

  Matrix V(n, limit);
  RowMatrix H = RowMatrix::Zero(limit, limit);
  V.col(0) = k.b / k.beta;

  Index built = limit;
  for (Index j = 0; j < limit; ++j) {
    Vector w = apply_cayley(p, *k.factorization, V.col(j));
    const double w_initial = w.norm();

    // Modified Gram-Schmidt followed by one full reorthogonalization pass.
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i <= j; ++i) {
        const Complex h = V.col(i).dot(w);
        w -= h * V.col(i);
        H(i, j) += h;
      }
    }
    const double h = w.norm();

    if (h < kLuckyBreakdownTolerance * w_initial || j + 1 == n) {
      built = j + 1;
      k.h_next = 0.0;
      break;
    }
    if (j + 1 < limit) {
      H(j + 1, j) = h;
      V.col(j + 1) = w / h;
    } else {
      k.h_next = h;
      k.v_next = w / h;
    }
  }

  k.m = built;
  k.V = V.leftCols(built);
  k.H = H.topLeftCorner(built, built);
  k.h_max = k.H.cwiseAbs().maxCoeff();
  return k;
}

ShiftedSolve solve_shifted(const KrylovBasis& k, Complex z) {
  const Index m = k.m;
  ShiftedSolve out{z, Vector::Zero(m), 0.0};
  if (m == 0) return out;

  const Complex shift = k.sigma - z;
  // G = I + (sigma - z) H, still upper Hessenberg. Only the band is written;
  // entries below the subdiagonal are never read.
  RowMatrix G(m, m);
  for (Index i = 0; i < m; ++i) {
    const Index first = i == 0 ? 0 : i - 1;
    G.row(i).tail(m - first) = shift * k.H.row(i).tail(m - first);
    G(i, i) += 1.0;
  }
  Vector r = Vector::Zero(m);
  r[0] = k.beta;

  // Squared magnitudes throughout; the threshold is 1e-14 of the entry scale.
  const double scale = 1.0 + std::abs(shift) * k.h_max;
  const double tiny2 = 1e-28 * scale * scale;

  // Gaussian elimination with pivoting restricted to the adjacent row.
  for (Index c = 0; c + 1 < m; ++c) {
    if (std::norm(G(c + 1, c)) > std::norm(G(c, c))) {
      G.row(c).tail(m - c).swap(G.row(c + 1).tail(m - c));
      std::swap(r[c], r[c + 1]);
    }
    if (!(std::norm(G(c, c)) > tiny2)) throw ReducedSingular(z);
    const Complex l = G(c + 1, c) / G(c, c);
    if (l != Complex(0.0)) {
      G.row(c + 1).tail(m - c - 1) -= l * G.row(c).tail(m - c - 1);
      r[c + 1] -= l * r[c];
    }
    G(c + 1, c) = 0.0;
  }
  if (!(std::norm(G(m - 1, m - 1)) > tiny2)) throw ReducedSingular(z);

  for (Index i = m - 1; i >= 0; --i) {
    const Complex s = r[i] - G.row(i).tail(m - 1 - i).transpose().cwiseProduct(
                                 out.y.tail(m - 1 - i)).sum();
    out.y[i] = s / G(i, i);
  }
  out.residual = std::abs(shift) * k.h_next * std::abs(out.y[m - 1]);
  return out;
}

Vector reconstruct(const KrylovBasis& k, const Vector& y) {
  if (y.size() != k.m) {
    throw DimensionError("reconstruct: reduced vector has length " + std::to_string(y.size()) +
                         ", basis has " + std::to_string(k.m) + " columns");
  }
  if (k.m == 0) return Vector::Zero(k.V.rows());
  return k.V * y;
}

Vector accumulate_reduced(const KrylovBasis& k,
                          std::span<const std::pair<Complex, Vector>> terms) {
  Vector sum = Vector::Zero(k.m);
  for (const auto& [w, y] : terms) {
    if (y.size() != k.m) throw DimensionError("accumulate_reduced: reduced length mismatch");
    sum += w * y;
  }
  return reconstruct(k, sum);
}

}  // namespace rimc
