// Per-frame cost of each measure on a water-sized network (N = 710, m ~ 1900).

#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "waternet/global_metrics.hpp"
#include "waternet/netbuild.hpp"
#include "waternet/paths.hpp"
#include "waternet/spectral.hpp"
#include "waternet/walkers.hpp"

using namespace waternet;

namespace {

const MolecularGraph& frame_graph() {
  static const MolecularGraph g = [] {
    wtest::Rng rng(710);
    return build_graph(wtest::water_sized_frame(rng));
  }();
  return g;
}

void BM_BuildGraph(benchmark::State& state) {
  wtest::Rng rng(710);
  const auto f = wtest::water_sized_frame(rng);
  const CutoffConfig cfg{0.35, state.range(0) ? NeighborStrategy::cell_list : NeighborStrategy::all_pairs};
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(f, cfg));
}
BENCHMARK(BM_BuildGraph)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TotalCommunicability(benchmark::State& state) {
  const auto& g = frame_graph();
  for (auto _ : state) benchmark::DoNotOptimize(total_communicability(g, 1.0));
}
BENCHMARK(BM_TotalCommunicability)->Unit(benchmark::kMillisecond);

void BM_Katz(benchmark::State& state) {
  const auto& g = frame_graph();
  const double alpha = 1.0 / (1.1 * spectral_radius(g));
  for (auto _ : state) benchmark::DoNotOptimize(katz(g, alpha));
}
BENCHMARK(BM_Katz)->Unit(benchmark::kMillisecond);

void BM_Subgraph(benchmark::State& state) {
  const auto& g = frame_graph();
  SubgraphOptions opts;
  opts.method = state.range(0) ? SubgraphMethod::quadrature : SubgraphMethod::dense;
  for (auto _ : state) benchmark::DoNotOptimize(subgraph_centrality(g, 1.0, opts));
}
BENCHMARK(BM_Subgraph)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Closeness(benchmark::State& state) {
  const auto& g = frame_graph();
  for (auto _ : state) benchmark::DoNotOptimize(closeness(g));
}
BENCHMARK(BM_Closeness)->Unit(benchmark::kMillisecond);

void BM_Betweenness(benchmark::State& state) {
  const auto& g = frame_graph();
  const PathOptions opts{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(betweenness(g, opts));
}
BENCHMARK(BM_Betweenness)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_GlobalMetrics(benchmark::State& state) {
  const auto& g = frame_graph();
  for (auto _ : state) benchmark::DoNotOptimize(global_metrics(g));
}
BENCHMARK(BM_GlobalMetrics)->Unit(benchmark::kMillisecond);

void BM_SpectralSummary(benchmark::State& state) {
  const auto& g = frame_graph();
  for (auto _ : state) benchmark::DoNotOptimize(spectral_summary(g));
}
BENCHMARK(BM_SpectralSummary)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
