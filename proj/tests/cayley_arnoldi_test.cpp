#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "rimc/cayley_arnoldi.hpp"
#include "rimc/errors.hpp"
#include "test_support.hpp"

using namespace rimc;

namespace {

Pencil known_spectrum(Index n, std::uint64_t seed) {
  oracle::SyntheticSpec spec;
  for (Index i = 0; i < n; ++i) {
    spec.eigenvalues.push_back(Complex(1.0 + 0.5 * static_cast<double>(i), 0.2 * ((i % 5) - 2.0)));
  }
  spec.transform = oracle::GivensSimilarity{seed, static_cast<int>(3 * n)};
  return oracle::synth_pencil(spec);
}

double arnoldi_defect(const Pencil& p, const KrylovBasis& k) {
  Matrix mv(p.n(), k.m);
  for (Index j = 0; j < k.m; ++j) mv.col(j) = apply_cayley(p, *k.factorization, k.V.col(j));
  Matrix r = mv - k.V * Matrix(k.H);
  if (k.h_next > 0.0) r.col(k.m - 1) -= k.v_next * k.h_next;
  return r.norm();
}

// b - (I + (sigma - z) M) x evaluated with explicit operator applications.
double explicit_residual(const Pencil& p, const KrylovBasis& k, Complex z, const Vector& x) {
  const Vector mx = apply_cayley(p, *k.factorization, x);
  return (k.b - x - (k.sigma - z) * mx).norm();
}

}  // namespace

TEST(BuildBasis, LuckyBreakdownOnEigenvector) {
  const Pencil p = test::diag_pencil({1.0, 2.0});
  for (Complex sigma : {Complex(0.5), Complex(0.0, 1.0), Complex(3.0, -2.0)}) {
    const auto k = build_basis(p, sigma, test::unit(2, 0), 2);
    ASSERT_EQ(k.m, 1);
    EXPECT_EQ(k.h_next, 0.0);
    EXPECT_EQ(k.v_next.size(), 0);
    const Complex h = 1.0 / (1.0 - sigma);
    EXPECT_LT(std::abs(k.H(0, 0) - h), 1e-15 * std::abs(h));
    EXPECT_LT(std::abs(k.b[0] - h), 1e-15 * std::abs(h));
    EXPECT_EQ(k.b[1], Complex(0.0));
  }
}

TEST(BuildBasis, OrthonormalAndFirstColumn) {
  const Pencil p = known_spectrum(80, 2);
  const auto k = build_basis(p, Complex(10.0, 0.3), random_probe(80, 1).values, 40);
  ASSERT_EQ(k.m, 40);
  EXPECT_LT((k.V.adjoint() * k.V - Matrix::Identity(40, 40)).norm(), 1e-10);
  EXPECT_LT((k.V.col(0) - k.b / k.beta).norm(), 1e-15);
  EXPECT_GT(k.h_next, 0.0);
  for (Index i = 2; i < k.m; ++i) {
    for (Index j = 0; j + 1 < i; ++j) EXPECT_EQ(k.H(i, j), Complex(0.0));
  }
}

TEST(BuildBasis, ArnoldiRelation) {
  const Pencil p = known_spectrum(100, 5);
  const auto k = build_basis(p, 0.0, random_probe(100, 3).values, 30);
  ASSERT_EQ(k.m, 30);
  EXPECT_LT(arnoldi_defect(p, k), 1e-9 * Matrix(k.H).norm());
}

TEST(BuildBasis, ZeroProbeAndErrors) {
  const Pencil p = test::diag_pencil({1.0, 2.0, 3.0});
  const auto k = build_basis(p, 0.5, Vector::Zero(3), 3);
  EXPECT_EQ(k.m, 0);
  EXPECT_EQ(k.beta, 0.0);
  EXPECT_EQ(reconstruct(k, Vector::Zero(0)), Vector::Zero(3));
  EXPECT_THROW(build_basis(p, 2.0, test::unit(3, 0), 3), ShiftIsEigenvalue);
  EXPECT_THROW(build_basis(p, 0.5, test::unit(3, 0), 0), ConfigError);
  EXPECT_THROW(build_basis(p, 0.5, Vector::Zero(4), 2), DimensionError);
}

TEST(BuildBasis, RejectsShiftOnHiddenEigenvalue) {
  // Without the check this basis breaks down at m = 1 and claims zero residual everywhere.
  const Pencil p = oracle::synth_pencil(test::real_axis_spec());
  const Vector f = random_probe(p.n(), 42).values;
  EXPECT_THROW(build_basis(p, 0.5, f, 50), ShiftIsEigenvalue);
  const KrylovBasis k = build_basis(p, Complex(0.5, 1e-6), f, 50);
  EXPECT_EQ(k.m, 50);
  EXPECT_GT(k.h_next, 0.0);
}

TEST(SolveShifted, AtTheShift) {
  const Pencil p = known_spectrum(60, 4);
  const Complex sigma(7.0, 0.25);
  const auto k = build_basis(p, sigma, random_probe(60, 8).values, 20);
  const auto s = solve_shifted(k, sigma);
  EXPECT_EQ(s.residual, 0.0);
  EXPECT_EQ(s.y[0], Complex(k.beta));
  for (Index i = 1; i < k.m; ++i) EXPECT_EQ(s.y[i], Complex(0.0));
  EXPECT_LT((reconstruct(k, s.y) - k.b).norm(), 1e-15 * k.beta);
}

TEST(SolveShifted, BreakdownBasisHasZeroResidual) {
  const Pencil p = test::diag_pencil({1.0, 2.0, 4.0, 8.0});
  Vector f = Vector::Zero(4);
  f[1] = 1.0;
  f[3] = 1.0;
  const auto k = build_basis(p, 0.0, f, 4);
  ASSERT_EQ(k.m, 2);
  EXPECT_EQ(k.h_next, 0.0);
  for (Complex z : {Complex(0.5, 0.5), Complex(3.0), Complex(-1.0, 2.0)}) {
    const auto s = solve_shifted(k, z);
    EXPECT_EQ(s.residual, 0.0);
    EXPECT_LT(test::rel_err(reconstruct(k, s.y), solve_node_direct(p, z, f)), 1e-13);
  }
}

TEST(SolveShifted, TwoByTwoFullSpace) {
  const Pencil p = test::diag_pencil({2.0, 5.0});
  Vector f(2);
  f << 1.0, 1.0;
  f /= std::sqrt(2.0);
  const auto k = build_basis(p, 0.0, f, 2);
  const Vector x = reconstruct(k, solve_shifted(k, 1.0).y);
  EXPECT_LT((x - solve_node_direct(p, 1.0, f)).norm(), 1e-12);
  Vector want(2);
  want << 1.0, 0.25;
  EXPECT_LT((x - want / std::sqrt(2.0)).norm(), 1e-12);
}

TEST(SolveShifted, ReducedSingular) {
  // With one column H = [h]; z = sigma + 1/h makes 1 + (sigma - z) h = 0.
  const Pencil p = test::diag_pencil({1.0, 2.0});
  const auto k = build_basis(p, 0.0, test::unit(2, 0), 2);
  ASSERT_EQ(k.m, 1);
  const Complex z = k.sigma + 1.0 / k.H(0, 0);
  try {
    solve_shifted(k, z);
    FAIL() << "expected ReducedSingular";
  } catch (const ReducedSingular& e) {
    EXPECT_EQ(e.z(), z);
  }
}

TEST(SolveShifted, ResidualFormulaMatchesExplicit) {
  const Index n = 100;
  const Pencil p = known_spectrum(n, 6);
  const Complex sigma(20.0, 0.1);
  // Choose f so that b = (A - sigma B)^{-1} f has unit norm.
  const Vector bhat = random_probe(n, 12).values;
  const Vector f = matvec(p.a(), bhat) - sigma * matvec(p.b(), bhat);
  const auto k = build_basis(p, sigma, f, 30);
  ASSERT_NEAR(k.beta, 1.0, 1e-12);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 25; ++t) {
    const Complex z = sigma + Complex(u(gen), u(gen));
    const auto s = solve_shifted(k, z);
    const double got = explicit_residual(p, k, z, reconstruct(k, s.y));
    EXPECT_NEAR(s.residual, got, 1e-8) << "z = " << z;
  }
}

TEST(SolveShifted, ShiftInvarianceOnSmallPencil) {
  const Index n = 40;
  const Pencil p = make_pencil(test::random_sparse(n, 0.1, 21, 3.0));
  const Complex sigma(0.2, 0.1);
  const Vector f = random_probe(n, 5).values;
  const auto k = build_basis(p, sigma, f, n);
  ASSERT_EQ(k.m, n);
  for (int t = 0; t < 12; ++t) {
    const Complex z = sigma + 0.3 * std::polar(1.0, 0.5 * t) * (0.2 + 0.07 * t);
    const auto s = solve_shifted(k, z);
    EXPECT_LT(s.residual, 1e-10);
    EXPECT_LT(test::rel_err(reconstruct(k, s.y), solve_node_direct(p, z, f)), 1e-9);
  }
}

TEST(SolveShifted, ExactAtFullDimension) {
  const Index n = 30;
  const Pencil p = known_spectrum(n, 7);
  const Vector f = random_probe(n, 2).values;
  const auto k = build_basis(p, Complex(4.0, 1.0), f, n);
  ASSERT_EQ(k.m, n);
  for (Complex z : {Complex(3.3, 0.1), Complex(9.9, -0.4), Complex(0.0, 2.0)}) {
    const auto s = solve_shifted(k, z);
    EXPECT_LT(test::rel_err(reconstruct(k, s.y), solve_node_direct(p, z, f)), 1e-9);
  }
}

TEST(CayleyClustering, DistantEigenvaluesClusterAtOne) {
  const Index n = 40;
  oracle::SyntheticSpec spec;
  for (Index i = 0; i < n; ++i) {
    spec.eigenvalues.push_back(Complex(1.0 + 0.6 * static_cast<double>(i), 0.1 * (i % 3)));
  }
  const Pencil p = oracle::synth_pencil(spec);
  const Complex sigma(1.1, 0.05);
  const Complex z(1.12, 0.06);

  // Spectrum of I + (sigma - z) M from the full Hessenberg matrix.
  const auto k = build_basis(p, sigma, random_probe(n, 3).values, n);
  ASSERT_EQ(k.m, n);
  const Matrix shifted = Matrix::Identity(n, n) + (sigma - z) * Matrix(k.H);
  const Eigen::ComplexEigenSolver<Matrix> es(shifted);

  int far = 0;
  for (const Complex lambda : spec.eigenvalues) {
    const Complex theta = (lambda - z) / (lambda - sigma);
    const double dist = (es.eigenvalues().array() - theta).abs().minCoeff();
    EXPECT_LT(dist, 1e-8 * std::abs(theta));
    if (std::abs(lambda - sigma) > 100.0 * std::abs(sigma - z)) {
      ++far;
      EXPECT_LT(std::abs(theta - 1.0), 0.011);
      EXPECT_NEAR(std::abs(theta - 1.0), std::abs(sigma - z) / std::abs(lambda - sigma), 1e-14);
    }
  }
  EXPECT_GT(far, 10);
}

TEST(Reconstruct, FirstColumnZeroAndIsometry) {
  const Pencil p = known_spectrum(50, 1);
  const auto k = build_basis(p, 3.0, random_probe(50, 4).values, 25);
  Vector y = Vector::Zero(k.m);
  y[0] = k.beta;
  EXPECT_LT((reconstruct(k, y) - k.b).norm(), 1e-14 * k.beta);
  EXPECT_EQ(reconstruct(k, Vector::Zero(k.m)), Vector::Zero(50));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Vector r = test::random_vector(k.m, s);
    EXPECT_NEAR(reconstruct(k, r).norm(), r.norm(), 1e-10);
  }
  EXPECT_THROW(reconstruct(k, Vector::Zero(k.m + 1)), DimensionError);
}

TEST(AccumulateReduced, MatchesNaiveSum) {
  const Pencil p = known_spectrum(50, 1);
  const auto k = build_basis(p, 3.0, random_probe(50, 4).values, 25);
  Vector y0 = Vector::Zero(k.m);
  y0[0] = k.beta;
  std::vector<std::pair<Complex, Vector>> single{{1.0, y0}};
  EXPECT_LT((accumulate_reduced(k, single) - k.b).norm(), 1e-14 * k.beta);

  const Vector y = test::random_vector(k.m, 1);
  std::vector<std::pair<Complex, Vector>> cancel{{1.0, y}, {-1.0, y}};
  EXPECT_EQ(accumulate_reduced(k, cancel), Vector::Zero(50));

  std::vector<std::pair<Complex, Vector>> terms;
  Vector naive = Vector::Zero(50);
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Complex w(std::cos(0.7 * s), std::sin(0.3 * s));
    terms.emplace_back(w, test::random_vector(k.m, 10 + s));
    naive += w * reconstruct(k, terms.back().second);
  }
  EXPECT_LT(test::rel_err(accumulate_reduced(k, terms), naive), 1e-12);

  terms.emplace_back(1.0, Vector::Zero(k.m + 2));
  EXPECT_THROW(accumulate_reduced(k, terms), DimensionError);
}
