#include <benchmark/benchmark.h>

#include <random>

#include "generators.h"
#include "texstitch/codec_dst.h"

namespace {

using namespace texstitch;

StitchPlan sample_plan() {
  std::mt19937 rng(3);
  return texstitch::testing::random_plan(rng, false);
}

void BM_EncodeDst(benchmark::State& state) {
  const StitchPlan plan = sample_plan();
  size_t bytes = 0;
  for (auto _ : state) {
    const auto out = encode_dst(plan);
    bytes += out.size();
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<int64_t>(bytes));
}
BENCHMARK(BM_EncodeDst);

void BM_DecodeDst(benchmark::State& state) {
  const auto bytes = encode_dst(sample_plan());
  for (auto _ : state) benchmark::DoNotOptimize(decode_dst(bytes));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_DecodeDst);

}  // namespace
