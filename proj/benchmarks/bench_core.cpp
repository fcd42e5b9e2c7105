#include <benchmark/benchmark.h>

#include "detpert/brownian.hpp"
#include "detpert/inequalities.hpp"
#include "detpert/randgen.hpp"

namespace {

using namespace detpert;

GenConfig config_for(int dim) {
  GenConfig cfg;
  cfg.max_dim = dim;
  return cfg;
}

void BM_Cholesky(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const SpdMatrix a = random_spd(dim, 0, config_for(dim));
  const SymMatrix base = a.base();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cholesky(base).log_det());
  }
}
BENCHMARK(BM_Cholesky)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SymEigen(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const SymMatrix base = random_spd(dim, 0, config_for(dim)).base();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sym_eigen(base).lambda.front());
  }
}
BENCHMARK(BM_SymEigen)->Arg(8)->Arg(16)->Arg(32);

void BM_Invert(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const SpdMatrix a = random_spd(dim, 0, config_for(dim));
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert(a));
  }
}
BENCHMARK(BM_Invert)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_RandomSpd(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const GenConfig cfg = config_for(dim);
  std::uint64_t substream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_spd(dim, substream++, cfg));
  }
}
BENCHMARK(BM_RandomSpd)->Arg(8)->Arg(32);

void BM_Theorem1Trial(benchmark::State& state) {
  GenConfig cfg;
  cfg.max_dim = static_cast<int>(state.range(0));
  std::uint64_t substream = 0;
  for (auto _ : state) {
    const TheoremInstance inst =
        random_instance(TheoremVariant::theorem1, cfg, substream++);
    benchmark::DoNotOptimize(theorem1_gap(inst));
  }
}
BENCHMARK(BM_Theorem1Trial)->Arg(16)->Arg(32);

void BM_Theorem2Trial(benchmark::State& state) {
  GenConfig cfg;
  cfg.max_dim = static_cast<int>(state.range(0));
  std::uint64_t substream = 0;
  for (auto _ : state) {
    const TheoremInstance inst =
        random_instance(TheoremVariant::theorem2, cfg, substream++);
    benchmark::DoNotOptimize(theorem2_gap(inst));
  }
}
BENCHMARK(BM_Theorem2Trial)->Arg(16)->Arg(32);

void BM_SuperadditivityGap(benchmark::State& state) {
  const int segments = static_cast<int>(state.range(0));
  const GridSpec grid(1.0, 1.0, segments, segments);
  std::uint64_t substream = 0;
  for (auto _ : state) {
    const PathInstance path = sample_path(grid, 7, substream++);
    benchmark::DoNotOptimize(superadditivity_gap(path));
  }
}
BENCHMARK(BM_SuperadditivityGap)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
