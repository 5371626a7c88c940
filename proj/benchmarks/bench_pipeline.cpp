#include <benchmark/benchmark.h>

#include "tuxqa/engine.hpp"
#include "tuxqa/synthetic.hpp"

using namespace tuxqa;

namespace {

const SyntheticDataset& dataset(std::size_t questions) {
  static std::map<std::size_t, SyntheticDataset> cache;
  auto it = cache.find(questions);
  if (it == cache.end()) {
    SyntheticOptions opts;
    opts.questions = questions;
    it = cache.emplace(questions, generate_synthetic(opts)).first;
  }
  return it->second;
}

void BM_Analyze(benchmark::State& state) {
  const auto& analyzer = Analyzer::bundled();
  const std::string text = "My Ubuntu 16.04 laptop does not boot after installing the nvidia driver with apt-get";
  for (auto _ : state) benchmark::DoNotOptimize(analyzer.analyze(text));
}
BENCHMARK(BM_Analyze);

void BM_BuildIndex(benchmark::State& state) {
  const auto& data = dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_index(data.corpus, Analyzer::bundled()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AnswerQuery(benchmark::State& state) {
  const auto& data = dataset(static_cast<std::size_t>(state.range(0)));
  static std::map<std::int64_t, Engine> engines;
  auto it = engines.find(state.range(0));
  if (it == engines.end()) {
    it = engines.emplace(state.range(0), Engine::build(data.corpus, data.catalog, EngineResources::bundled())).first;
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(it->second.answer_query(data.gold[i++ % data.gold.size()].query_text));
  }
}
BENCHMARK(BM_AnswerQuery)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
