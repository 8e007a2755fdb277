#include <benchmark/benchmark.h>

#include "wss/audit.hpp"
#include "wss/oracle.hpp"
#include "wss/protocol.hpp"
#include "wss/serialize.hpp"

namespace {

wss::Pattern pattern(const char* name) {
  return wss::load_pattern(std::string(WSS_DATA_DIR) + "/patterns/" + name + ".json");
}

void BM_FieldRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const wss::FMatrix m = wss::sample_uniform(n, n, 1277, 1);
  for (auto _ : state) benchmark::DoNotOptimize(wss::field_rank(m));
}
BENCHMARK(BM_FieldRank)->RangeMultiplier(2)->Range(8, 128);

void BM_OptimalRate(benchmark::State& state) {
  const wss::Pattern p = pattern("ex2");
  for (auto _ : state) benchmark::DoNotOptimize(wss::optimal_rate(p));
}
BENCHMARK(BM_OptimalRate);

void BM_Synthesize(benchmark::State& state) {
  const wss::Pattern p = pattern(state.range(0) == 0 ? "ex1" : "ex2");
  const wss::RateAnalysis r = wss::optimal_rate(p);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(wss::synthesize(p, r, ++seed));
}
BENCHMARK(BM_Synthesize)->Arg(0)->Arg(1);

void BM_Round(benchmark::State& state) {
  const wss::Pattern p = pattern("ex2");
  const wss::KeyScheme s = wss::synthesize(p, wss::optimal_rate(p), 7);
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(wss::run_round_seeded(s, 1, r++));
}
BENCHMARK(BM_Round);

void BM_FullAudit(benchmark::State& state) {
  const wss::Pattern p = pattern("symmetric_k5_s2_t2");
  const wss::KeyScheme s = wss::synthesize(p, wss::optimal_rate(p), 7);
  for (auto _ : state) benchmark::DoNotOptimize(wss::full_audit(s));
}
BENCHMARK(BM_FullAudit)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const wss::Pattern p = pattern("ex1");
  wss::SynthesisOptions opts;
  opts.prime_override = 3;
  const wss::KeyScheme s = wss::synthesize(p, wss::optimal_rate(p), 7, opts);
  for (auto _ : state) benchmark::DoNotOptimize(wss::bruteforce_mi_oracle(s, {p.security[0], p.colluding[0]}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * wss::oracle_atom_count(s)));
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
