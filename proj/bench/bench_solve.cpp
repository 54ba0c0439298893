#include <benchmark/benchmark.h>

#include <random>

#include "spqo/generators.hpp"
#include "spqo/oracle.hpp"
#include "spqo/pqtree.hpp"
#include "spqo/solver.hpp"
#include "spqo/sweep.hpp"

using namespace spqo;

namespace {

void BM_SolveScaling(benchmark::State& state) {
  const Instance d = scaling_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(d));
  state.counters["size"] = static_cast<double>(instance_size(d));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(instance_size(d)));
}
BENCHMARK(BM_SolveScaling)->RangeMultiplier(2)->Range(64, 2048)->Complexity()->Unit(benchmark::kMillisecond);

void BM_ConsecutiveSets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Label> leaves;
  for (int i = 0; i < n; ++i) leaves.push_back("l" + std::to_string(i));
  std::vector<std::vector<Label>> family;
  for (int i = 0; i + 3 <= n; i += 2) family.push_back({leaves[i], leaves[i + 1], leaves[i + 2]});
  for (auto _ : state) benchmark::DoNotOptimize(from_consecutive_sets(leaves, family));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ConsecutiveSets)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

// Oracle cross-check of random 2-fixed instances; argument 0 runs serially.
void BM_OracleSweep(benchmark::State& state) {
  const auto mode = state.range(0) ? SweepMode::Parallel : SweepMode::Serial;
  for (auto _ : state) {
    auto agree = sweep(64, [](std::size_t i) {
      std::mt19937_64 rng(i);
      auto d = random_two_fixed_instance(rng);
      if (!d) return false;
      return (solve(*d).status == SolveStatus::Feasible) == brute_force_simultaneous_orders(*d).has_value();
    }, mode);
    benchmark::DoNotOptimize(agree);
  }
}
BENCHMARK(BM_OracleSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
