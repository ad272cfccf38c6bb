#include <benchmark/benchmark.h>

#include <random>

#include "generators.h"
#include "texstitch/stitch_planner.h"

namespace {

using namespace texstitch;

void BM_FillSquare(benchmark::State& state) {
  const double side = static_cast<double>(state.range(0));
  const Polygon square{{0, 0}, {side, 0}, {side, side}, {0, side}};
  const PlannerParams params;
  size_t stitches = 0;
  for (auto _ : state) {
    const StitchBlock block = plan_fill(square, params);
    for (const auto& run : block.runs) stitches += run.size();
    benchmark::DoNotOptimize(block);
  }
  state.counters["stitches/s"] = benchmark::Counter(static_cast<double>(stitches), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_FillSquare)->Arg(10)->Arg(30)->Arg(90);

void BM_FillRandomConvex(benchmark::State& state) {
  std::mt19937 rng(11);
  std::vector<Polygon> polys;
  for (int i = 0; i < 64; ++i) polys.push_back(texstitch::testing::random_convex_polygon(rng));
  PlannerParams params;
  params.fill_angle_deg = 30;
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(plan_fill(polys[i++ % polys.size()], params));
}
BENCHMARK(BM_FillRandomConvex);

void BM_RunningStitch(benchmark::State& state) {
  Polyline path;
  for (int i = 0; i < 200; ++i) path.push_back({i * 0.7, (i % 2) * 3.0});
  const PlannerParams params;
  for (auto _ : state) benchmark::DoNotOptimize(running_stitches(path, params));
}
BENCHMARK(BM_RunningStitch);

}  // namespace
