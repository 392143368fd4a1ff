#include <benchmark/benchmark.h>

#include "bwembed/conditions.hpp"
#include "bwembed/embedder.hpp"
#include "bwembed/homomorphism.hpp"
#include "bwembed/hostgen.hpp"
#include "bwembed/partition_engine.hpp"
#include "bwembed/pipeline.hpp"
#include "bwembed/regularity.hpp"

using namespace bwembed;

namespace {

void BM_ExactExpander(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Graph g = gen_random_graph(n, 0.7, 1);
  ExpanderOptions o;
  o.mode = CheckMode::exact;
  for (auto _ : state) benchmark::DoNotOptimize(check_robust_expander(g, 0.05, 0.25, o).holds);
}
BENCHMARK(BM_ExactExpander)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_RegularPair(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  HostInstance h = gen_super_regular_host(2, s, 0.5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_regular_pair(h.g, h.partition.a(0), h.partition.b(0), 0.35, 0.3).regular);
}
BENCHMARK(BM_RegularPair)->Arg(12)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

// Fresh seed per iteration, so only the lemma's own retry conditions apply.
void BM_Homomorphism(benchmark::State& state) {
  Config cfg;
  cfg.tally_slack = 0;
  HostInstance host = gen_super_regular_host(4, 50, 0.5, 1001);
  auto base = lemma_for_g_baseline(host.g, host.partition, cfg, 1);
  BandwidthH h = gen_bandwidth_bipartite_h(400, 3, 10, 2001);
  const LemmaHParams p{cfg.k1, cfg.m1, cfg.m2, cfg.k2};
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_homomorphism(h.h, h.ordering, h.side, base.sizes, *base.partition.b_chord, cfg, ++seed, p).attempts);
}
BENCHMARK(BM_Homomorphism)->Unit(benchmark::kMillisecond);

void BM_EmbedMatchedPairs(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  HostInstance host = gen_super_regular_host(2, s, 0.5, 1);
  Graph g = host.g.filter_edges([s](int u, int v) { return u / s / 2 == v / s / 2; });
  // H: a perfect matching across each pair.
  std::vector<Edge> e;
  for (int c = 0; c < 4; c += 2)
    for (int t = 0; t < s; ++t) e.emplace_back(c * s + t, (c + 1) * s + t);
  Graph h(4 * s, e);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    EmbedOptions o;
    o.seed = ++seed;
    benchmark::DoNotOptimize(embed_blowup(h, host.partition.classes, g, host.partition.classes, matching_pairs_graph(4), {}, o).restarts);
  }
}
BENCHMARK(BM_EmbedMatchedPairs)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  HostInstance host = gen_super_regular_host(4, 50, 0.5, 1001);
  BandwidthH h = gen_bandwidth_bipartite_h(400, 3, 10, 2001);
  const HBundle hb{h.h, h.ordering, h.side};
  for (auto _ : state) benchmark::DoNotOptimize(run_full_pipeline(host.g, host.partition, hb, Config{}, 1).success);
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
