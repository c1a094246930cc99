#include <benchmark/benchmark.h>

#include <cstdio>
#include <filesystem>

#include "humanshape/imaging.hpp"
#include "humanshape/pipeline.hpp"
#include "humanshape/raster_io.hpp"
#include "humanshape/synthgen.hpp"

using namespace humanshape;
namespace fs = std::filesystem;

namespace {

struct Scene {
  GrayImage background;
  GrayImage frame;
};

Scene scene(int scale) {
  const BinaryMask m = upscale(render_humanoid({}).mask, scale);
  GrayImage bg = textured_background(m.width() + 40, m.height() + 40, 7);
  GrayImage frame = composite(bg, m, {20, 20}, 20);
  return {std::move(bg), std::move(frame)};
}

void BM_Correlation(benchmark::State& state) {
  const Scene s = scene(2);
  for (auto _ : state) benchmark::DoNotOptimize(correlation(s.background, s.frame));
}
BENCHMARK(BM_Correlation)->Unit(benchmark::kMicrosecond);

void BM_AnalyzeFrame(benchmark::State& state) {
  const Scene s = scene(static_cast<int>(state.range(0)));
  const PipelineConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(analyze_frame({s.background}, s.frame, 1, config));
}
BENCHMARK(BM_AnalyzeFrame)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

// 24 frames of a figure sliding left, read from disk, at 1..N workers.
class Sequence : public benchmark::Fixture {
 public:
  void SetUp(const benchmark::State&) override {
    dir = fs::temp_directory_path() / "humanshape_bench_seq";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const BinaryMask m = upscale(render_humanoid({}).mask, 2);
    background = textured_background(m.width() + 40 + 23 * 6, m.height() + 40, 3);
    for (int i = 0; i < 24; ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%04d.png", i + 1);
      write_image(dir / name, composite(background, m, {20, 20 + 23 * 6 - 6 * i}, 20));
    }
  }

  void TearDown(const benchmark::State&) override { fs::remove_all(dir); }

  fs::path dir;
  GrayImage background{1, 1};
};

BENCHMARK_DEFINE_F(Sequence, RunPipeline)(benchmark::State& state) {
  const FrameStream stream = FrameStream::from_directory(dir);
  const RunOptions options{static_cast<unsigned>(state.range(0)), false};
  for (auto _ : state) {
    std::size_t n = 0;
    run_pipeline({background}, stream, {}, options, [&](const FrameResult&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream.size()));
}
BENCHMARK_REGISTER_F(Sequence, RunPipeline)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
