#include <benchmark/benchmark.h>

#include "pcabel/logic.hpp"
#include "pcabel/oracle.hpp"
#include "pcabel/pipeline.hpp"

using namespace pcabel;

namespace {

const char* kGolden = "0->012 1->112002 2->";

PipelineConfig no_check() {
  PipelineConfig c;
  c.check = false;
  return c;
}

void BM_PipelineGolden(benchmark::State& state) {
  auto f = parse_morphism(kGolden);
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(f, 0, no_check()));
}
BENCHMARK(BM_PipelineGolden)->Unit(benchmark::kMillisecond);

void BM_PipelineAperiodic(benchmark::State& state) {
  auto f = parse_morphism("0->010011 1->1001");
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(f, 0, no_check()));
}
BENCHMARK(BM_PipelineAperiodic)->Unit(benchmark::kMillisecond);

void BM_Uniformize(benchmark::State& state) {
  auto f = parse_morphism(kGolden);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_presentation(uniformize(f, 0)));
}
BENCHMARK(BM_Uniformize);

void BM_Certify(benchmark::State& state) {
  auto f = parse_morphism(kGolden);
  auto p = minimize_presentation(uniformize(f, 0));
  for (auto _ : state) benchmark::DoNotOptimize(certify_recognizability(f, 0, p));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

void BM_DecideAperiodic(benchmark::State& state) {
  auto p = minimize_presentation(uniformize(parse_morphism(kGolden), 0));
  Environment env(3);
  env.add_sequence("X", dfao_of_word(p));
  auto phi = parse_formula("~(Ep,i p>0 & (An n>i => (X[n]=X[n+p])))").formula;
  for (auto _ : state) benchmark::DoNotOptimize(decide(phi, env));
}
BENCHMARK(BM_DecideAperiodic)->Unit(benchmark::kMillisecond);

void BM_OracleAbelian(benchmark::State& state) {
  auto f = parse_morphism(kGolden);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    oracle::PrefixBuffer buffer(f, 0, 1);
    benchmark::DoNotOptimize(oracle::brute_abelian(buffer, n));
  }
}
BENCHMARK(BM_OracleAbelian)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
