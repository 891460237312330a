#include <gtest/gtest.h>

#include "rimc/errors.hpp"
#include "rimc/oracle.hpp"
#include "rimc/recursive_search.hpp"
#include "rimc/spectral_projector.hpp"
#include "test_support.hpp"

using namespace rimc;
using namespace rimc::oracle;

namespace {

Matrix similarity_matrix(std::span<const Rotation> rots, Index n) {
  Matrix q(n, n);
  for (Index j = 0; j < n; ++j) q.col(j) = apply_similarity(rots, test::unit(n, j));
  return q;
}

Vector half_half() {
  Vector f(2);
  f << 1.0, 1.0;
  return f / std::sqrt(2.0);
}

}  // namespace

TEST(SynthPencil, PlainDiagonal) {
  SyntheticSpec spec;
  spec.eigenvalues = {1.0, 2.0, 3.0};
  const Pencil p = synth_pencil(spec);
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 1.0, 2.0, 3.0;
  EXPECT_EQ(p.a().to_dense(), a);
  EXPECT_EQ(p.b().to_dense(), Matrix::Identity(3, 3));
}

TEST(SynthPencil, InfiniteRowsMakeBSingular) {
  SyntheticSpec spec;
  spec.eigenvalues = {2.0, 3.0};
  spec.infinite_count = 1;
  EXPECT_EQ(spec.n(), 3);
  const Pencil p = synth_pencil(spec);
  EXPECT_EQ(p.b().coeff(2, 2), Complex(0.0));
  EXPECT_EQ(p.a().coeff(2, 2), Complex(1.0));
  EXPECT_THROW(factorize_shift(p, 2.0), ShiftIsEigenvalue);
  EXPECT_THROW(factorize_shift(p, 3.0), ShiftIsEigenvalue);
  EXPECT_NO_THROW(factorize_shift(p, 1.0));
  EXPECT_NO_THROW(factorize_shift(p, 0.0));
}

TEST(SynthPencil, GivensSimilarityIsUnitaryAndExact) {
  SyntheticSpec spec;
  spec.eigenvalues = {Complex(1.0, 1.0), 2.0, Complex(-3.0, 0.5), 4.0, 5.0};
  spec.infinite_count = 2;
  spec.transform = GivensSimilarity{12, 40};
  const auto rots = rotations(spec);
  ASSERT_EQ(rots.size(), 40u);
  EXPECT_EQ(rotations(spec).front().s, rots.front().s);

  const Index n = spec.n();
  const Matrix q = similarity_matrix(rots, n);
  EXPECT_LT((q.adjoint() * q - Matrix::Identity(n, n)).norm(), 1e-14);
  const Vector v = test::random_vector(n, 2);
  EXPECT_LT((apply_similarity_adjoint(rots, apply_similarity(rots, v)) - v).norm(), 1e-14);
  EXPECT_LT((apply_similarity_adjoint(rots, v) - q.adjoint() * v).norm(), 1e-14);

  Matrix a = Matrix::Zero(n, n);
  Matrix b = Matrix::Zero(n, n);
  for (Index i = 0; i < 5; ++i) {
    a(i, i) = spec.eigenvalues[i];
    b(i, i) = 1.0;
  }
  a(5, 5) = a(6, 6) = 1.0;
  const Pencil p = synth_pencil(spec);
  EXPECT_LT((p.a().to_dense() - q * a * q.adjoint()).norm(), 1e-13);
  EXPECT_LT((p.b().to_dense() - q * b * q.adjoint()).norm(), 1e-13);
}

TEST(ExactProjection, Examples) {
  SyntheticSpec spec;
  spec.eigenvalues = {2.0, 5.0};
  const Vector f = half_half();
  Vector want(2);
  want << 1.0 / std::sqrt(2.0), 0.0;
  EXPECT_EQ(exact_projection(spec, f, 2.0, 1.0), want);
  EXPECT_EQ(exact_projection(spec, f, 20.0, 1.0), Vector::Zero(2));
  EXPECT_EQ(exact_projection(spec, f, 3.5, 3.0), f);
  EXPECT_THROW(exact_projection(spec, f, 3.0, 2.0), OnContour);
  EXPECT_THROW(exact_projection(spec, Vector::Zero(3), 3.0, 1.0), DimensionError);
}

TEST(ExactProjection, IdempotentMask) {
  SyntheticSpec spec;
  spec.eigenvalues = test::spread(20, -2.0, 2.0);
  spec.infinite_count = 3;
  spec.transform = GivensSimilarity{5, 60};
  const Vector f = random_probe(spec.n(), 1).values;
  const Vector once = exact_projection(spec, f, 0.1, 0.9);
  const Vector twice = exact_projection(spec, once, 0.1, 0.9);
  EXPECT_LT((twice - once).norm(), 1e-15);
  EXPECT_GT(once.norm(), 0.0);
  EXPECT_LT(once.norm(), f.norm());
}

TEST(BruteProjection, MatchesExactOnDiagonalPencil) {
  SyntheticSpec spec;
  spec.eigenvalues = {Complex(0.1, 0.2), Complex(-0.4, -0.1), 1.3, Complex(0.0, -1.4), -2.0};
  spec.infinite_count = 2;
  const Pencil p = synth_pencil(spec);
  const Vector f = random_probe(p.n(), 6).values;
  const Vector brute = brute_projection(p, f, 0.0, 1.0, 128);
  EXPECT_LT((brute - exact_projection(spec, f, 0.0, 1.0)).norm(), 1e-8);
}

TEST(BruteProjection, MatchesKrylovProjection) {
  SyntheticSpec spec;
  spec.eigenvalues = test::spread(90, -9.0, 9.0);
  spec.infinite_count = 10;
  spec.transform = GivensSimilarity{8, 400};
  const Pencil p = synth_pencil(spec);
  const Vector f = random_probe(p.n(), 3).values;
  const Complex c(0.05, 0.03);
  const double r = 0.33;
  ShiftCache cache(64);
  const Vector krylov = project(p, f, make_circle(c, r, 64), cache, Config{}).vector;
  const Vector brute = brute_projection(p, f, c, r, 64);
  EXPECT_LT((krylov - brute).norm(), 1e-6);
}

TEST(BruteProjection, ZeroProbeAndErrors) {
  const Pencil p = test::diag_pencil({2.0, 5.0});
  EXPECT_EQ(brute_projection(p, Vector::Zero(2), 2.0, 1.0, 64), Vector::Zero(2));
  EXPECT_THROW(brute_projection(p, half_half(), 2.0, 1.0, 32), ConfigError);
  EXPECT_THROW(brute_projection(p, half_half(), 2.0, 1.0, 64 + 1), ConfigError);
}

TEST(SpectrumPreservation, TransformedMatchesPlain) {
  SyntheticSpec spec;
  spec.eigenvalues = {Complex(0.2, 0.3), Complex(0.2, -0.3), Complex(-0.5, 0.1), 0.7, 3.0, -4.0};
  spec.infinite_count = 4;
  const Config cfg;
  const Region root{0.0, 1.0};
  const auto plain = rim_c(synth_pencil(spec), root, cfg);
  spec.transform = GivensSimilarity{21, 80};
  const auto rotated = rim_c(synth_pencil(spec), root, cfg);
  ASSERT_EQ(plain.eigenvalues.size(), 4u);
  ASSERT_EQ(rotated.eigenvalues.size(), plain.eigenvalues.size());
  for (std::size_t i = 0; i < plain.eigenvalues.size(); ++i) {
    EXPECT_LE(std::abs(plain.eigenvalues[i].value - rotated.eigenvalues[i].value), cfg.d0);
  }
}
