#include <benchmark/benchmark.h>

#include "invariant/generators.hpp"
#include "invariant/schemas.hpp"
#include "invariant/text_format.hpp"

namespace {

using namespace invariant;

Formula trains(std::int64_t frames) { return gen_trains({.seed = 1, .n_frames = frames}); }

void BM_GenerateTrains(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trains(state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateTrains)->Arg(1000)->Arg(9601);

void BM_PrintTrains(benchmark::State& state) {
  auto f = trains(state.range(0));
  std::size_t bytes = 0;
  for (auto _ : state) {
    auto text = print(f);
    bytes = text.size();
    benchmark::DoNotOptimize(text);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_PrintTrains)->Arg(9601);

void BM_ParseTrains(benchmark::State& state) {
  auto text = print(trains(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parse(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseTrains)->Arg(9601);

void BM_ValidateKinect(benchmark::State& state) {
  auto f = gen_kinect({.seed = 1, .n_points = state.range(0), .n_colors = state.range(0) * 4});
  for (auto _ : state) benchmark::DoNotOptimize(validate_kinect(f));
}
BENCHMARK(BM_ValidateKinect)->Arg(100000);

void BM_ValidateFesto(benchmark::State& state) {
  auto f = gen_festo({.seed = 1, .n_events = 4761});
  for (auto _ : state) benchmark::DoNotOptimize(validate_festo(f));
}
BENCHMARK(BM_ValidateFesto);

}  // namespace

BENCHMARK_MAIN();
