#include <benchmark/benchmark.h>

#include <random>

#include "alusafe/closure.hpp"
#include "alusafe/constant_search.hpp"
#include "alusafe/counting.hpp"
#include "alusafe/safety.hpp"
#include "alusafe/witness.hpp"

using namespace alusafe;

static void BM_AnalyzeDiv8(benchmark::State& state) {
  Operator div = Operator::builtin(Builtin::div_classical, Width(8));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(div).safe());
}
BENCHMARK(BM_AnalyzeDiv8);

static void BM_AnalyzeAdd3Exhaustive8(benchmark::State& state) {
  Operator add3 = Operator::builtin(Builtin::add3, Width(8));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(add3).safe());
}
BENCHMARK(BM_AnalyzeAdd3Exhaustive8);

static void BM_ParityCollapse32(benchmark::State& state) {
  std::mt19937_64 rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(parity_collapse(static_cast<uint32_t>(rng()), Width(32)));
}
BENCHMARK(BM_ParityCollapse32);

static void BM_WitnessDivision(benchmark::State& state) {
  Operator div = Operator::builtin(Builtin::div_classical, Width(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(make_witness(div).verification.verified);
}
BENCHMARK(BM_WitnessDivision)->Arg(4)->Arg(8);

static void BM_SearchMulAdd3(benchmark::State& state) {
  OperatorSet ops(Width(2));
  ops.add(Operator::builtin(Builtin::mul, Width(2)));
  ops.add(Operator::builtin(Builtin::add3, Width(2)));
  SearchOptions opts;
  opts.max_nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_constants(ops, 2, opts).semantic_classes);
}
BENCHMARK(BM_SearchMulAdd3)->Arg(9)->Arg(13);

static void BM_ClosureMulAdd2(benchmark::State& state) {
  Width w(2);
  std::vector<Operator> gens{Operator::builtin(Builtin::mul, w),
                             Operator::builtin(Builtin::add2, w)};
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(close(gens, w, k).size());
}
BENCHMARK(BM_ClosureMulAdd2)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ClosureMulAdd3(benchmark::State& state) {
  Width w(2);
  std::vector<Operator> gens{Operator::builtin(Builtin::mul, w),
                             Operator::builtin(Builtin::add3, w)};
  for (auto _ : state) benchmark::DoNotOptimize(close(gens, w, 2).size());
}
BENCHMARK(BM_ClosureMulAdd3)->Unit(benchmark::kMillisecond);

static void BM_CountBrute(benchmark::State& state) {
  // the full 2^32 streaming scan for conditions (i),(ii)
  for (auto _ : state) {
    CountResult r = count_tables(Width(2), 2, {.i = true, .ii = true}, true);
    benchmark::DoNotOptimize(r.brute);
  }
}
BENCHMARK(BM_CountBrute)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_PatchRandomTable(benchmark::State& state) {
  std::mt19937_64 rng(5);
  Width w(4);
  std::vector<uint32_t> table(256);
  for (auto& v : table) v = static_cast<uint32_t>(rng()) & 15;
  Operator op = Operator::dense("t", w, 2, std::move(table));
  for (auto _ : state) benchmark::DoNotOptimize(patch(op).table().size());
}
BENCHMARK(BM_PatchRandomTable);

BENCHMARK_MAIN();
