#include <benchmark/benchmark.h>

#include <string>

#include "texstitch/codec_dst.h"
#include "texstitch/pipeline.h"
#include "texstitch/preview_render.h"

namespace {

using namespace texstitch;

ChartSpec load(const char* name) {
  return load_chart_spec(std::string(TEXSTITCH_BENCH_DATA_DIR) + "/" + name, TextureLibrary::builtin());
}

void BM_CompileFamilyChart(benchmark::State& state) {
  const ChartSpec spec = load("family.json");
  const TextureLibrary textures = TextureLibrary::builtin();
  for (auto _ : state) benchmark::DoNotOptimize(compile_chart(spec, textures));
}
BENCHMARK(BM_CompileFamilyChart)->Unit(benchmark::kMillisecond);

void BM_CompileAndExport(benchmark::State& state) {
  const ChartSpec spec = load("family.json");
  const TextureLibrary textures = TextureLibrary::builtin();
  for (auto _ : state) {
    const CompiledChart chart = compile_chart(spec, textures);
    benchmark::DoNotOptimize(encode_dst(chart.plan));
    benchmark::DoNotOptimize(render_svg(chart.plan));
  }
}
BENCHMARK(BM_CompileAndExport)->Unit(benchmark::kMillisecond);

void BM_DensityMap(benchmark::State& state) {
  const CompiledChart chart = compile_chart(load("family.json"), TextureLibrary::builtin());
  for (auto _ : state) benchmark::DoNotOptimize(render_density(chart.plan, 1.0));
}
BENCHMARK(BM_DensityMap);

}  // namespace
