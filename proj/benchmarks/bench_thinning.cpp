#include <benchmark/benchmark.h>

#include "humanshape/features.hpp"
#include "humanshape/imaging.hpp"
#include "humanshape/skeleton.hpp"
#include "humanshape/synthgen.hpp"

using namespace humanshape;

namespace {

BinaryMask figure(int scale) { return upscale(render_humanoid({}).mask, scale); }

void BM_Thin(benchmark::State& state) {
  const BinaryMask m = figure(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thin(m));
  state.counters["fg_px"] = static_cast<double>(m.foreground_count());
}
BENCHMARK(BM_Thin)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BuildAndPrune(benchmark::State& state) {
  const BinaryMask t = thin(figure(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(prune(build_graph(t)));
}
BENCHMARK(BM_BuildAndPrune)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_Features(benchmark::State& state) {
  const SkeletonGraph g = prune(build_graph(thin(figure(static_cast<int>(state.range(0))))));
  for (auto _ : state) benchmark::DoNotOptimize(compute_features(g));
}
BENCHMARK(BM_Features)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_CleanMask(benchmark::State& state) {
  const BinaryMask m = figure(2);
  for (auto _ : state) benchmark::DoNotOptimize(clean_mask(m, 1, 2));
}
BENCHMARK(BM_CleanMask)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
