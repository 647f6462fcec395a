#include <benchmark/benchmark.h>

#include "graphforge/arch.hpp"
#include "graphforge/features.hpp"
#include "graphforge/generators.hpp"
#include "graphforge/layout.hpp"

using namespace graphforge;

namespace {

Dag staged_rdag(int n) {
  RdagParams p;
  p.n = n;
  p.out_degree = OutDegreeSpec::constant(4);
  p.f = LocalityFunction::exponential(2);
  return assign_stages(gen_rdag(p, {1, "bench"}));
}

Dag full_dag(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Dag(n, std::move(edges));
}

}  // namespace

static void BM_KamadaKawaiEr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const UndirectedGraph g = largest_component(gen_er(n, 0.2, {3, "bench"}));
  for (auto _ : state) benchmark::DoNotOptimize(kamada_kawai(g));
}
BENCHMARK(BM_KamadaKawaiEr)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_Dagify(benchmark::State& state) {
  const UndirectedGraph g = gen_ws(static_cast<int>(state.range(0)), 4, 0.2, {5, "bench"});
  for (auto _ : state) benchmark::DoNotOptimize(dagify(g));
}
BENCHMARK(BM_Dagify)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_PathCountFullDag(benchmark::State& state) {
  const Dag d = full_dag(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_paths(d));
}
BENCHMARK(BM_PathCountFullDag)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMicrosecond);

static void BM_PathCountRdag(benchmark::State& state) {
  const Dag d = staged_rdag(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_paths(d));
}
BENCHMARK(BM_PathCountRdag)->Arg(30)->Arg(60)->Unit(benchmark::kMicrosecond);

static void BM_ComputeFeatures(benchmark::State& state) {
  const Dag d = staged_rdag(static_cast<int>(state.range(0)));
  const Embedding e = kamada_kawai(underlying_undirected(d));
  for (auto _ : state) benchmark::DoNotOptimize(compute_features(d, e));
}
BENCHMARK(BM_ComputeFeatures)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_SolveChannels(benchmark::State& state) {
  const Dag d = staged_rdag(60);
  for (auto _ : state) benchmark::DoNotOptimize(solve_channels(d, kResNet56Params));
}
BENCHMARK(BM_SolveChannels)->Unit(benchmark::kMicrosecond);

static void BM_Composite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_composite(30, 0.85, static_cast<int>(state.range(0)), {7, "bench"}));
}
BENCHMARK(BM_Composite)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
