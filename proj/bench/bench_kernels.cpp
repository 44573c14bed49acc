// Serial reference kernels vs their OpenMP counterparts on a preferential-attachment graph.
//
//   bench_kernels --benchmark_filter=Cocitation
//   EQRANK_BENCH_VERTICES=1000000 EQRANK_BENCH_EDGES=6300000 bench_kernels

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cstdlib>
#include <string>

#include "eqrank/cocitation.hpp"
#include "eqrank/hierarchy.hpp"
#include "eqrank/level.hpp"
#include "eqrank/synth.hpp"

namespace {

using namespace eqrank;

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::stoull(v) : fallback;
}

const CitationGraph& graph() {
  static const CitationGraph g = [] {
    const std::size_t n = env_size("EQRANK_BENCH_VERTICES", 200'000);
    const std::size_t m = env_size("EQRANK_BENCH_EDGES", 1'260'000);
    return CitationGraph::from_edges(n, synth::preferential_attachment(n, m, 42));
  }();
  return g;
}

const WeightedGraph& weighted() {
  static const WeightedGraph wg = weight_all_edges(graph());
  return wg;
}

const LevelResult& level() {
  static const LevelResult r = eqrank_level(weighted());
  return r;
}

void set_threads(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  state.counters["threads"] = static_cast<double>(state.range(0));
}

void BM_Cocitation_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::weight_all_edges(graph()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(graph().edge_count()));
}

void BM_Cocitation_Parallel(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(weight_all_edges(graph()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(graph().edge_count()));
}

void BM_LocalMaps_Serial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::local_authority_map(weighted()));
    benchmark::DoNotOptimize(serial::local_hub_map(weighted()));
  }
}

void BM_LocalMaps_Parallel(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_authority_map(weighted()));
    benchmark::DoNotOptimize(local_hub_map(weighted()));
  }
}

void BM_Roots_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::resolve_roots(level().local_hub));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(graph().vertex_count()));
}

void BM_Roots_Parallel(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(resolve_roots(level().local_hub));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(graph().vertex_count()));
}

void BM_Reduce_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::reduce_graph(graph(), level().partition));
}

void BM_Reduce_Parallel(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_graph(graph(), level().partition));
}

void BM_Hierarchy(benchmark::State& state) {
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_hierarchy(graph()));
}

void thread_args(benchmark::internal::Benchmark* b) {
  for (int t = 1; t <= std::max(1, omp_get_num_procs()); t *= 2) b->Arg(t);
}

}  // namespace

BENCHMARK(BM_Cocitation_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cocitation_Parallel)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalMaps_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalMaps_Parallel)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Roots_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Roots_Parallel)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reduce_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reduce_Parallel)->Apply(thread_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hierarchy)->Apply(thread_args)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  // Build the shared fixtures up front so no benchmark pays for them.
  level();
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
