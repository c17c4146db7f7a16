#include <benchmark/benchmark.h>

#include "lensembed/berge.hpp"
#include "lensembed/contfrac.hpp"
#include "lensembed/embed.hpp"
#include "lensembed/verify.hpp"

#include <numeric>

using namespace lensembed;

static void BM_expand(benchmark::State& state) {
  std::vector<std::int64_t> terms;
  for (int i = 0; i < 60; ++i) terms.push_back(2 + (i * 7) % 9);
  auto [p, q] = hj_eval(HJString::from_ints(terms));
  for (auto _ : state) benchmark::DoNotOptimize(hj_expand(p, q));
}
BENCHMARK(BM_expand);

static void BM_find_embeddings(benchmark::State& state) {
  auto p = state.range(0);
  for (auto _ : state) {
    for (std::int64_t q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) benchmark::DoNotOptimize(find_embeddings(p, q));
  }
}
BENCHMARK(BM_find_embeddings)->Arg(64)->Arg(161)->Arg(331)->Unit(benchmark::kMillisecond);

static void BM_recognize_linear(benchmark::State& state) {
  auto sigmas = enumerate_changemakers(state.range(0));
  for (auto _ : state) {
    LinearCatalog catalog;
    for (const auto& s : sigmas) benchmark::DoNotOptimize(recognize_linear(s, true, {}, &catalog));
  }
  state.counters["changemakers"] = static_cast<double>(sigmas.size());
}
BENCHMARK(BM_recognize_linear)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_berge_entries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(berge_entries(state.range(0)));
}
BENCHMARK(BM_berge_entries)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_verify_range(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_realization(2, state.range(0)));
}
BENCHMARK(BM_verify_range)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
