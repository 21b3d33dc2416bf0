#include <benchmark/benchmark.h>

#include "coopsem/algebra.hpp"
#include "coopsem/harness.hpp"

using namespace coopsem;

namespace {

const Config kX2{{"x"}, 2};
const Config kX3{{"x"}, 3};

void BM_DenoteFigureTwo(benchmark::State& state) {
  const CmdPtr c = parse("async { x := 0 }; x := 1; yield; blockuntil x == 0; x := 2", kX3);
  const auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(denote(c, kX3, bound));
}
BENCHMARK(BM_DenoteFigureTwo)->DenseRange(2, 6);

void BM_DenoteCorpus(benchmark::State& state) {
  const auto cs = corpus(static_cast<int>(state.range(0)), kX2);
  for (auto _ : state) {
    Denoter den(kX2, 3);
    for (const CmdPtr& c : cs) benchmark::DoNotOptimize(den.denote(c));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * cs.size()));
}
BENCHMARK(BM_DenoteCorpus)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Adequacy(benchmark::State& state) {
  std::vector<AdequacyEntry> es;
  for (const CmdPtr& c : corpus(2, kX2)) es.push_back({{}, c});
  for (auto _ : state) benchmark::DoNotOptimize(adequacy_check(es, kX2, 3));
}
BENCHMARK(BM_Adequacy)->Unit(benchmark::kMillisecond);

void BM_PoolShuffle(benchmark::State& state) {
  const auto l0 = static_cast<std::size_t>(state.range(0));
  TraceSet p = random_set(Kind::Pool, l0, 1, kX2), q = random_set(Kind::Pool, l0, 2, kX2);
  for (std::uint64_t s = 3; s < 12; s += 2) {
    p = set_union(p, random_set(Kind::Pool, l0, s, kX2));
    q = set_union(q, random_set(Kind::Pool, l0, s + 1, kX2));
  }
  for (auto _ : state) benchmark::DoNotOptimize(pool_shuffle(p, q));
}
BENCHMARK(BM_PoolShuffle)->DenseRange(1, 4);

void BM_Law(benchmark::State& state) {
  LawOptions opts;
  opts.samples = 50;
  for (auto _ : state) benchmark::DoNotOptimize(check_law("rsh-assoc", kX2, opts));
}
BENCHMARK(BM_Law)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
