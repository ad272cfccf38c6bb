#include <benchmark/benchmark.h>

#include <random>

#include "generators.h"
#include "texstitch/stitch_planner.h"

namespace {

using namespace texstitch;

void BM_GreedyOrder(benchmark::State& state) {
  std::mt19937 rng(5);
  const auto blocks = texstitch::testing::random_blocks(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_order(blocks));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GreedyOrder)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void BM_OrderBlocks(benchmark::State& state) {
  std::mt19937 rng(6);
  const auto blocks = texstitch::testing::random_blocks(rng, static_cast<int>(state.range(0)));
  const PlannerParams params;
  for (auto _ : state) benchmark::DoNotOptimize(order_blocks(blocks, params));
}
BENCHMARK(BM_OrderBlocks)->Arg(16)->Arg(128);

}  // namespace
