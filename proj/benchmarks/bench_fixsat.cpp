#include <benchmark/benchmark.h>

#include "fixsat/baselines.hpp"
#include "fixsat/fix_solver.hpp"
#include "fixsat/generator.hpp"
#include "fixsat/matching.hpp"
#include "fixsat/rng.hpp"

namespace {

using namespace fixsat;

void BM_SampleFormula(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto config = GeneratorConfig::from_density(n, 10, 120, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_formula(config));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * config.m));
}
BENCHMARK(BM_SampleFormula)->Arg(10000)->Arg(40000)->Unit(benchmark::kMillisecond);

void BM_FixSolve(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto k = static_cast<std::uint32_t>(state.range(1));
  const double density = static_cast<double>(state.range(2));
  const auto formula = sample_formula(GeneratorConfig::from_density(n, k, density, 1));
  for (auto _ : state) benchmark::DoNotOptimize(fix_solve(formula));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * formula.num_clauses()));
}
BENCHMARK(BM_FixSolve)
    ->Args({20000, 10, 30})
    ->Args({20000, 10, 120})
    ->Args({40000, 10, 120})
    ->Args({20000, 5, 3})
    ->Unit(benchmark::kMillisecond);

void BM_Phase1(benchmark::State& state) {
  const auto formula = sample_formula(GeneratorConfig::from_density(static_cast<std::uint32_t>(state.range(0)), 10, 120, 1));
  for (auto _ : state) benchmark::DoNotOptimize(run_phase1(formula).z().size());
}
BENCHMARK(BM_Phase1)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_UnitClause(benchmark::State& state) {
  const auto formula = sample_formula(GeneratorConfig::from_density(static_cast<std::uint32_t>(state.range(0)), 10, 120, 1));
  for (auto _ : state) benchmark::DoNotOptimize(unit_clause_solve(formula, 7));
}
BENCHMARK(BM_UnitClause)->Arg(20000)->Unit(benchmark::kMillisecond);

ClauseVariableGraph random_graph(std::size_t left, std::size_t right, std::size_t degree, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint32_t> l(left);
  std::vector<Var> r(right);
  for (std::size_t i = 0; i < left; ++i) l[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < right; ++i) r[i] = static_cast<Var>(i + 1);
  std::vector<std::vector<std::uint32_t>> adj(left);
  for (auto& a : adj) {
    for (std::size_t d = 0; d < degree; ++d) a.push_back(static_cast<std::uint32_t>(rng.below(right)));
  }
  return ClauseVariableGraph(std::move(l), std::move(r), std::move(adj));
}

void BM_HopcroftKarp(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto graph = random_graph(size, size + size / 2, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(hopcroft_karp(graph));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HopcroftKarp)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
