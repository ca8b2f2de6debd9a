// OpenMP kernels against their serial references.
//
//   bench_kernels [--benchmark_filter=...]
//
// Each parallel case is run at 1 thread and at the OpenMP default, so the
// fused-kernel gain and the threading gain show up separately.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "gwvn/montecarlo.hpp"

namespace {

using namespace gwvn;

constexpr std::size_t kCount = 2000;

void threads_arg(benchmark::internal::Benchmark* b) {
  b->ArgNames({"N", "threads"});
  for (long n : {110, 510, 5210}) {
    b->Args({n, 1});
    if (omp_get_max_threads() > 1) b->Args({n, omp_get_max_threads()});
  }
}

void BM_entropy_serial(benchmark::State& state) {
  const SampleConfig cfg{static_cast<std::size_t>(state.range(0)), kCount, 1};
  for (auto _ : state) benchmark::DoNotOptimize(mc::entropy_samples_serial(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kCount));
}
BENCHMARK(BM_entropy_serial)->ArgName("N")->Arg(110)->Arg(510)->Arg(5210)->Unit(benchmark::kMillisecond);

void BM_entropy_parallel(benchmark::State& state) {
  const SampleConfig cfg{static_cast<std::size_t>(state.range(0)), kCount, 1};
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mc::entropy_samples(cfg, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kCount));
}
BENCHMARK(BM_entropy_parallel)->Apply(threads_arg)->Unit(benchmark::kMillisecond);

void bipartite_args(benchmark::internal::Benchmark* b) {
  b->ArgNames({"n", "m", "threads"});
  for (auto [n, m] : {std::pair<long, long>{8, 32}, {64, 64}}) {
    b->Args({n, m, 1});
    if (omp_get_max_threads() > 1) b->Args({n, m, omp_get_max_threads()});
  }
}

mc::BipartiteConfig bipartite(const benchmark::State& state, std::size_t count) {
  return {static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), count, 2};
}

void BM_triple_serial(benchmark::State& state) {
  const auto cfg = bipartite(state, 500);
  for (auto _ : state) benchmark::DoNotOptimize(mc::triple_samples_serial(cfg));
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_triple_serial)->ArgNames({"n", "m"})->Args({8, 32})->Args({64, 64})->Unit(benchmark::kMillisecond);

void BM_triple_parallel(benchmark::State& state) {
  const auto cfg = bipartite(state, 500);
  const int threads = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(mc::triple_samples(cfg, threads));
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_triple_parallel)->Apply(bipartite_args)->Unit(benchmark::kMillisecond);

void BM_von_neumann_serial(benchmark::State& state) {
  const auto cfg = bipartite(state, 200);
  for (auto _ : state) benchmark::DoNotOptimize(mc::von_neumann_samples_serial(cfg));
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_von_neumann_serial)->ArgNames({"n", "m"})->Args({8, 32})->Args({64, 64})->Unit(benchmark::kMillisecond);

void BM_von_neumann_parallel(benchmark::State& state) {
  const auto cfg = bipartite(state, 200);
  const int threads = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(mc::von_neumann_samples(cfg, threads));
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_von_neumann_parallel)->Apply(bipartite_args)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
