#include <benchmark/benchmark.h>

#include "askew/bowtie.hpp"
#include "askew/synth.hpp"

namespace {

askew::SynthCorpus corpus(std::size_t users) {
  askew::SynthSpec spec;
  spec.user_count = users;
  spec.masses = *askew::preset_masses("bbd");
  return askew::generate_corpus(spec, 1);
}

void BM_BuildGraph(benchmark::State& state) {
  const auto c = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto tweets = c.tweets;
    benchmark::DoNotOptimize(askew::build_graph(std::move(tweets)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.tweets.size()));
}

void BM_Scc(benchmark::State& state) {
  const auto g = askew::build_graph(corpus(static_cast<std::size_t>(state.range(0))).tweets);
  for (auto _ : state) benchmark::DoNotOptimize(askew::scc_decompose(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}

void BM_BowTie(benchmark::State& state) {
  const auto g = askew::build_graph(corpus(static_cast<std::size_t>(state.range(0))).tweets);
  for (auto _ : state) benchmark::DoNotOptimize(askew::bowtie_decompose(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}

void BM_CutFlow(benchmark::State& state) {
  const auto g = askew::build_graph(corpus(static_cast<std::size_t>(state.range(0))).tweets);
  const auto d = askew::bowtie_decompose(g);
  const auto in = d.mask(askew::Component::In);
  const auto lscc = d.mask(askew::Component::Lscc);
  for (auto _ : state) benchmark::DoNotOptimize(askew::cut_flow(g, in, lscc, "IN", "LSCC"));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.tweet_count()));
}

}  // namespace

BENCHMARK(BM_BuildGraph)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scc)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BowTie)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CutFlow)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
