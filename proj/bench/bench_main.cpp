// Serial reference kernels against their OpenMP counterparts.
// Thread counts are passed as the benchmark argument; 1 selects the serial path.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "rimc/oracle.hpp"
#include "rimc/recursive_search.hpp"
#include "test_support.hpp"

using namespace rimc;

namespace {

int max_threads() { return std::max(2, omp_get_max_threads()); }

oracle::SyntheticSpec search_spec() { return test::real_axis_spec(); }

void BM_MatvecSerial(benchmark::State& state) {
  const auto m = test::random_sparse(state.range(0), 0.05, 1);
  const Vector x = test::random_vector(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(matvec_serial(m, x));
  state.SetItemsProcessed(state.iterations() * m.nonzeros());
}
BENCHMARK(BM_MatvecSerial)->Arg(1000)->Arg(3000);

void BM_MatvecParallel(benchmark::State& state) {
  const auto m = test::random_sparse(state.range(0), 0.05, 1);
  const Vector x = test::random_vector(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(matvec(m, x));
  state.SetItemsProcessed(state.iterations() * m.nonzeros());
}
BENCHMARK(BM_MatvecParallel)->Arg(1000)->Arg(3000);

void BM_Indicators(benchmark::State& state) {
  const Pencil p = oracle::synth_pencil(search_spec());
  const Vector f = random_probe(p.n(), 42).values;
  std::vector<Region> regions;
  for (int i = 0; i < 32; ++i) regions.push_back({Complex(-12.0 + 0.75 * i, 0.0), 0.3});
  Config cfg;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ShiftCache cache(cfg.shift_budget);
    benchmark::DoNotOptimize(indicators(p, f, regions, cache, cfg));
  }
}
BENCHMARK(BM_Indicators)->Arg(1)->Arg(max_threads())->Unit(benchmark::kMillisecond);

void BM_RimC(benchmark::State& state) {
  const Pencil p = oracle::synth_pencil(search_spec());
  Config cfg;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rim_c(p, Region{0.0, 1.0}, cfg));
}
BENCHMARK(BM_RimC)->Arg(1)->Arg(max_threads())->Unit(benchmark::kMillisecond);

void BM_BruteProjection(benchmark::State& state) {
  const Pencil p = oracle::synth_pencil(search_spec());
  const Vector f = random_probe(p.n(), 7).values;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::brute_projection(p, f, 0.0, 1.0, 64, threads));
  }
}
BENCHMARK(BM_BruteProjection)->Arg(1)->Arg(max_threads())->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
