#include <benchmark/benchmark.h>

#include "graphlim/canonical.hpp"
#include "graphlim/inertia.hpp"
#include "graphlim/local_stats.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/partition.hpp"
#include "graphlim/sequence.hpp"
#include "graphlim/spectral.hpp"

namespace {

using namespace graphlim;

void canonical_ball(benchmark::State& state) {
  const Graph g = gen_torus(20, 2);
  const int r = static_cast<int>(state.range(0));
  Vertex v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_key(ball(g, v, r)));
    v = (v + 1) % g.vertex_count();
  }
}
BENCHMARK(canonical_ball)->Arg(1)->Arg(2);

void census(benchmark::State& state) {
  const Graph g = gen_random_regular(static_cast<int>(state.range(0)), 3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(class_census(g, 2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(census)->Arg(1000)->Arg(4000)->Complexity(benchmark::oN);

void star_distance_heuristic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = gen_random_regular(n, 3, 3);
  const Graph h = gen_random_regular(n, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(delta_s_heuristic(g, h));
}
BENCHMARK(star_distance_heuristic)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void star_distance_exact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = gen_path(n);
  const Graph h = gen_cycle(n);
  for (auto _ : state) benchmark::DoNotOptimize(delta_s_exact(g, h));
}
BENCHMARK(star_distance_exact)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

void path_partition(benchmark::State& state) {
  const Graph g = gen_path(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(partition_path_like(g, 0.05));
}
BENCHMARK(path_partition)->Arg(10000);

void spectrum_dense(benchmark::State& state) {
  const SymMatrix m = assemble(gen_torus(static_cast<int>(state.range(0)), 2), builtin_kernel("laplacian"));
  SpectralOptions o;
  o.mode = SpectrumMode::dense;
  for (auto _ : state) benchmark::DoNotOptimize(spectral_cdf(m, o));
}
BENCHMARK(spectrum_dense)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void inertia_query(benchmark::State& state) {
  const SymMatrix m = assemble(gen_torus(static_cast<int>(state.range(0)), 2), builtin_kernel("laplacian"));
  const InertiaCounter counter(m);
  double shift = -7.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counter.count_below(shift));
    shift = shift > 7.9 ? -7.9 : shift + 0.01234;
  }
}
BENCHMARK(inertia_query)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
