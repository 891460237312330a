#include <gtest/gtest.h>

#include <atomic>

#include "rimc/parallel.hpp"
#include "rimc/recursive_search.hpp"
#include "test_support.hpp"

using namespace rimc;

TEST(Parallel, ForEachIndexVisitsEveryIndexOnce) {
  for (int threads : {1, 2, 4}) {
    std::vector<std::atomic<int>> hits(1000);
    for_each_index(1000, threads, [&](Index i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(Parallel, MatvecMatchesSerialBitwise) {
  const auto m = test::random_sparse(600, 0.1, 4);
  ASSERT_GT(m.nonzeros(), 20000);
  const Vector x = test::random_vector(600, 5);
  EXPECT_EQ(matvec(m, x), matvec_serial(m, x));
}

TEST(Parallel, IndicatorsIndependentOfThreads) {
  oracle::SyntheticSpec spec;
  spec.eigenvalues = test::spread(60, -3.0, 3.0);
  spec.infinite_count = 10;
  spec.transform = oracle::GivensSimilarity{2, 200};
  const Pencil p = oracle::synth_pencil(spec);
  const Vector f = random_probe(p.n(), 42).values;
  std::vector<Region> regions;
  for (int i = 0; i < 24; ++i) regions.push_back({Complex(-2.9 + 0.25 * i, 0.01 * i), 0.12});

  Config serial;
  Config parallel;
  parallel.threads = 4;
  ShiftCache c1(256);
  ShiftCache c4(256);
  SearchStats s1;
  SearchStats s4;
  const auto a = indicators(p, f, regions, c1, serial, &s1);
  const auto b = indicators(p, f, regions, c4, parallel, &s4);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].admissible, b[i].admissible);
  }
  EXPECT_EQ(s1.factorizations_built, s4.factorizations_built);
  EXPECT_EQ(s1.node_solves, s4.node_solves);
  EXPECT_EQ(c1.size(), c4.size());
}

TEST(Parallel, SearchIndependentOfThreads) {
  oracle::SyntheticSpec spec;
  spec.eigenvalues = {Complex(0.2, 0.3), Complex(0.2, -0.3), -0.5, Complex(0.71, 0.05), 2.0};
  spec.infinite_count = 5;
  spec.transform = oracle::GivensSimilarity{9, 40};
  const Pencil p = oracle::synth_pencil(spec);
  Config serial;
  Config parallel;
  parallel.threads = 4;
  const auto a = rim_c(p, Region{0.0, 1.0}, serial);
  const auto b = rim_c(p, Region{0.0, 1.0}, parallel);
  ASSERT_EQ(a.eigenvalues.size(), 4u);
  ASSERT_EQ(a.eigenvalues.size(), b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    EXPECT_EQ(a.eigenvalues[i].value, b.eigenvalues[i].value);
    EXPECT_EQ(a.eigenvalues[i].indicator_value, b.eigenvalues[i].indicator_value);
  }
  EXPECT_EQ(a.stats.regions_tested, b.stats.regions_tested);
  EXPECT_EQ(a.stats.factorizations_built, b.stats.factorizations_built);
}

TEST(Parallel, BruteProjectionIndependentOfThreads) {
  oracle::SyntheticSpec spec;
  spec.eigenvalues = test::spread(30, -2.0, 2.0);
  spec.transform = oracle::GivensSimilarity{1, 60};
  const Pencil p = oracle::synth_pencil(spec);
  const Vector f = random_probe(p.n(), 1).values;
  EXPECT_EQ(oracle::brute_projection(p, f, 0.05, 0.5, 64, 1),
            oracle::brute_projection(p, f, 0.05, 0.5, 64, 4));
}
