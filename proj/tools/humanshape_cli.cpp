// humanshape: frame differencing, skeleton features and human-shape scoring.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "humanshape/config.hpp"
#include "humanshape/errors.hpp"
#include "humanshape/features.hpp"
#include "humanshape/imaging.hpp"
#include "humanshape/json_io.hpp"
#include "humanshape/pipeline.hpp"
#include "humanshape/raster_io.hpp"
#include "humanshape/skeleton.hpp"
#include "humanshape/synthgen.hpp"

namespace fs = std::filesystem;
using namespace humanshape;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

struct Common {
  std::string config_path;
  std::string out_dir;

  PipelineConfig config() const {
    return config_path.empty() ? PipelineConfig{} : load_config(config_path);
  }
  // Empty when no --out-dir was given.
  std::optional<fs::path> dir() const {
    if (out_dir.empty()) return std::nullopt;
    fs::create_directories(out_dir);
    return fs::path(out_dir);
  }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config_path, "key = value pipeline config")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", common.out_dir, "directory for output files");
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<GrayImage> read_all(const std::vector<std::string>& paths) {
  std::vector<GrayImage> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(read_image(p));
  return out;
}

// --- diff ------------------------------------------------------------------

struct DiffArgs {
  Common common;
  std::string background, frame, output = "diff.png";
  bool clean = false;
};

int run_diff(const DiffArgs& a) {
  const PipelineConfig config = a.common.config();
  const GrayImage bg = read_image(a.background);
  const GrayImage frame = read_image(a.frame);
  BinaryMask mask = diff_mask(bg, frame, config.intensity_tolerance);
  if (a.clean) mask = clean_mask(mask, config.open_radius, config.close_radius);
  const fs::path out = a.common.dir().value_or(fs::path(".")) / a.output;
  write_mask(out, mask);
  std::cout << out.string() << ' ' << mask.foreground_count() << '\n';
  return 0;
}

// --- skeletonize / features -------------------------------------------------

struct MaskArgs {
  Common common;
  std::string mask;
};

int run_skeletonize(const MaskArgs& a) {
  const PipelineConfig config = a.common.config();
  const BinaryMask mask = to_mask(read_image(a.mask));
  const SkeletonGraph graph = skeletonize(mask, config);
  const fs::path dir = a.common.dir().value_or(fs::path("."));
  write_mask(dir / "skeleton.png", graph.mask());
  write_json(dir / "graph.json", graph_json(graph));
  std::cout << "pixels " << graph.mask().foreground_count() << " endpoints "
            << graph.count_of_kind(PointKind::Endpoint) << " forks "
            << graph.count_of_kind(PointKind::Fork) << " branches " << graph.branches().size()
            << '\n';
  return 0;
}

int run_features(const MaskArgs& a) {
  const PipelineConfig config = a.common.config();
  const BinaryMask mask = to_mask(read_image(a.mask));
  nlohmann::ordered_json out;
  try {
    out = features_json(compute_features(skeletonize(mask, config), config.feature_params()));
  } catch (const TooFewEndpoints& e) {
    out = {{"error", e.what()}};
  }
  if (auto dir = a.common.dir()) write_json(*dir / "features.json", out);
  std::cout << out.dump() << '\n';
  return 0;
}

// --- detect / run -------------------------------------------------------------

struct DetectArgs {
  Common common;
  std::vector<std::string> backgrounds;
  std::string frame;
  std::optional<std::int64_t> frame_id;
  bool timing = false;
};

int run_detect(const DetectArgs& a) {
  const PipelineConfig config = a.common.config();
  const auto backgrounds = read_all(a.backgrounds);
  const GrayImage frame = read_image(a.frame);
  const std::int64_t id = a.frame_id.value_or(sequence_number(a.frame).value_or(0));
  FrameArtifacts art;
  FrameResult result;
  try {
    DetectionReport report = analyze_frame(backgrounds, frame, id, config, a.timing, &art);
    TrackState tracker(config.track_params());
    apply_tracking(report, tracker, config);
    result = std::move(report);
  } catch (const Error& e) {
    result = FrameError{id, e.what()};
  }
  const std::string line = report_line(result);
  if (auto dir = a.common.dir()) {
    if (art.diff) write_mask(*dir / "diff.png", *art.diff);
    if (art.object) write_mask(*dir / "object.png", *art.object);
    if (art.graph) {
      write_mask(*dir / "skeleton.png", art.graph->mask());
      write_json(*dir / "graph.json", graph_json(*art.graph));
    }
    if (art.features) write_json(*dir / "features.json", features_json(*art.features));
    write_json(*dir / "report.json", result_json(result));
  }
  std::cout << line << '\n';
  return 0;
}

struct RunArgs {
  Common common;
  std::vector<std::string> backgrounds;
  std::string frames_dir;
  std::vector<std::string> frame_files;
  unsigned jobs = 1;
  bool timing = false;
};

int run_run(const RunArgs& a) {
  const PipelineConfig config = a.common.config();
  const auto backgrounds = read_all(a.backgrounds);
  const FrameStream stream = a.frames_dir.empty()
                                 ? FrameStream::from_paths({a.frame_files.begin(), a.frame_files.end()})
                                 : FrameStream::from_directory(a.frames_dir);
  std::ofstream file;
  if (auto dir = a.common.dir()) {
    save_config(*dir / "config.txt", config);
    file.open(*dir / "reports.jsonl");
    if (!file) throw IoError("cannot write " + (*dir / "reports.jsonl").string());
  }
  run_pipeline(backgrounds, stream, config, {a.jobs, a.timing}, [&](const FrameResult& r) {
    const std::string line = report_line(r);
    std::cout << line << '\n';
    if (file.is_open()) file << line << '\n';
  });
  std::cout.flush();
  return 0;
}

// --- gen ----------------------------------------------------------------------

struct GenArgs {
  Common common;
  int margin = 20;
  int intensity = 20;
  std::uint64_t background_seed = 7;
  // humanoid
  HumanoidSpec spec;
  std::string pose = "ArmsDown";
  std::uint64_t seed = 0;
  int scale = 1;
  // quadruped
  int body = 120, legs = 40, thickness = 5;
  // rigid
  int width = 100, height = 40;
  // sequence
  int frames = 40;
  int step_col = -5;
};

int write_figure(const GenArgs& a, const FigureGroundTruth& truth) {
  const fs::path dir = a.common.dir().value_or(fs::path("."));
  const int w = truth.mask.width() + 2 * a.margin;
  const int h = truth.mask.height() + 2 * a.margin;
  const Pixel offset{a.margin, a.margin};
  const GrayImage bg = textured_background(w, h, a.background_seed);
  const GrayImage frame =
      composite(bg, truth.mask, offset, static_cast<std::uint8_t>(a.intensity));

  BinaryMask placed(w, h);
  for (const Pixel p : truth.mask.foreground_pixels()) placed.set(translate(p, offset), true);
  FigureGroundTruth shifted = truth;
  shifted.mask = placed;
  for (auto& [name, p] : shifted.landmarks) p = translate(p, offset);

  write_mask(dir / "mask.png", placed);
  write_image(dir / "background.png", bg);
  write_image(dir / "frame.png", frame);
  auto j = truth_json(shifted);
  j["offset"] = pixel_json(offset);
  write_json(dir / "truth.json", j);
  std::cout << (dir / "frame.png").string() << '\n';
  return 0;
}

std::optional<Pose> parse_pose(const std::string& s) {
  if (s == "ArmsDown") return Pose::ArmsDown;
  if (s == "ArmsOut") return Pose::ArmsOut;
  if (s == "SlightBend") return Pose::SlightBend;
  return std::nullopt;
}

FigureGroundTruth humanoid_truth(const GenArgs& a) {
  HumanoidSpec spec = a.spec;
  spec.pose = parse_pose(a.pose).value();
  FigureGroundTruth truth = render_humanoid(spec, a.seed);
  if (a.scale > 1) {
    truth.mask = upscale(truth.mask, a.scale);
    for (auto& [name, p] : truth.landmarks) p = {p.row * a.scale, p.col * a.scale};
  }
  return truth;
}

// Humanoid walking across a static background, one frame per step.
int write_sequence(const GenArgs& a) {
  const fs::path dir = a.common.dir().value_or(fs::path("."));
  const FigureGroundTruth truth = humanoid_truth(a);
  const int travel = std::abs(a.step_col) * (a.frames - 1);
  const int w = truth.mask.width() + 2 * a.margin + travel;
  const int h = truth.mask.height() + 2 * a.margin;
  const GrayImage bg = textured_background(w, h, a.background_seed);
  write_image(dir / "background.png", bg);
  fs::create_directories(dir / "frames");
  const int start_col = a.step_col < 0 ? a.margin + travel : a.margin;
  for (int i = 0; i < a.frames; ++i) {
    const Pixel offset{a.margin, start_col + i * a.step_col};
    const GrayImage frame =
        composite(bg, truth.mask, offset, static_cast<std::uint8_t>(a.intensity));
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04d.png", i + 1);
    write_image(dir / "frames" / name, frame);
  }
  std::cout << (dir / "frames").string() << ' ' << a.frames << '\n';
  return 0;
}

void add_gen_common(CLI::App* cmd, GenArgs& g) {
  cmd->add_option("--out-dir", g.common.out_dir, "directory for output files");
  cmd->add_option("--margin", g.margin, "background border around the figure")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--intensity", g.intensity, "figure grey level")->check(CLI::Range(0, 255));
  cmd->add_option("--background-seed", g.background_seed, "background noise seed");
}

void add_humanoid_options(CLI::App* cmd, GenArgs& g) {
  cmd->add_option("--height", g.spec.height_px, "head-to-foot height in px");
  cmd->add_option("--neck-fraction", g.spec.neck_fraction);
  cmd->add_option("--waist-fraction", g.spec.waist_fraction);
  cmd->add_option("--arm-span", g.spec.arm_span_fraction, "hand span as a fraction of height");
  cmd->add_option("--thickness", g.spec.limb_thickness, "limb thickness in px");
  cmd->add_option("--pose", g.pose)->check(CLI::IsMember({"ArmsDown", "ArmsOut", "SlightBend"}));
  cmd->add_option("--jitter", g.spec.jitter_px, "tip jitter in px");
  cmd->add_option("--seed", g.seed);
  cmd->add_option("--scale", g.scale, "integer upscale factor")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"humanshape: human-shape detection from frame differences and skeletons"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "humanshape 0.1.0");

  DiffArgs diff;
  auto* diff_cmd = app.add_subcommand("diff", "write the difference mask of a frame");
  add_common(diff_cmd, diff.common);
  diff_cmd->add_option("--background", diff.background)->required()->check(CLI::ExistingFile);
  diff_cmd->add_option("--frame", diff.frame)->required()->check(CLI::ExistingFile);
  diff_cmd->add_option("--output", diff.output, "file name inside the output directory");
  diff_cmd->add_flag("--clean", diff.clean, "apply opening and closing");

  MaskArgs skel;
  auto* skel_cmd = app.add_subcommand("skeletonize", "thin and prune a mask, write skeleton and graph");
  add_common(skel_cmd, skel.common);
  skel_cmd->add_option("--mask", skel.mask)->required()->check(CLI::ExistingFile);

  MaskArgs feat;
  auto* feat_cmd = app.add_subcommand("features", "shape features of a mask as JSON");
  add_common(feat_cmd, feat.common);
  feat_cmd->add_option("--mask", feat.mask)->required()->check(CLI::ExistingFile);

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "run the full pipeline on one frame");
  add_common(detect_cmd, detect.common);
  detect_cmd->add_option("--background", detect.backgrounds, "background image (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  detect_cmd->add_option("--frame", detect.frame)->required()->check(CLI::ExistingFile);
  detect_cmd->add_option("--frame-id", detect.frame_id, "defaults to the number in the file name");
  detect_cmd->add_flag("--timing", detect.timing, "per-stage timings in diagnostics");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "stream reports for a numbered frame sequence");
  add_common(run_cmd, run.common);
  run_cmd->add_option("--background", run.backgrounds, "background image (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* dir_opt = run_cmd->add_option("--frames", run.frames_dir, "directory of numbered frames")
                      ->check(CLI::ExistingDirectory);
  auto* files_opt =
      run_cmd->add_option("files", run.frame_files, "frame files in order")->check(CLI::ExistingFile);
  dir_opt->excludes(files_opt);
  run_cmd->add_option("-j,--jobs", run.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  run_cmd->add_flag("--timing", run.timing, "per-stage timings in diagnostics");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate synthetic figures");
  gen_cmd->require_subcommand(1);
  auto* g_human = gen_cmd->add_subcommand("humanoid", "stick-figure human");
  add_gen_common(g_human, gen);
  add_humanoid_options(g_human, gen);
  auto* g_quad = gen_cmd->add_subcommand("quadruped", "four-legged animal");
  add_gen_common(g_quad, gen);
  g_quad->add_option("--body", gen.body, "body length in px");
  g_quad->add_option("--legs", gen.legs, "leg length in px");
  g_quad->add_option("--thickness", gen.thickness);
  auto* g_box = gen_cmd->add_subcommand("box", "solid rectangle");
  add_gen_common(g_box, gen);
  g_box->add_option("--width", gen.width);
  g_box->add_option("--height", gen.height);
  auto* g_car = gen_cmd->add_subcommand("car", "car silhouette");
  add_gen_common(g_car, gen);
  g_car->add_option("--width", gen.width);
  g_car->add_option("--height", gen.height);
  auto* g_seq = gen_cmd->add_subcommand("sequence", "humanoid drifting across a background");
  add_gen_common(g_seq, gen);
  add_humanoid_options(g_seq, gen);
  g_seq->add_option("--frames", gen.frames, "number of frames")->check(CLI::Range(1, 100000));
  g_seq->add_option("--step", gen.step_col, "column shift per frame");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*diff_cmd) return run_diff(diff);
    if (*skel_cmd) return run_skeletonize(skel);
    if (*feat_cmd) return run_features(feat);
    if (*detect_cmd) return run_detect(detect);
    if (*run_cmd) {
      if (run.frames_dir.empty() && run.frame_files.empty()) {
        std::cerr << "run: give --frames DIR or frame files\n";
        return kExitUsage;
      }
      return run_run(run);
    }
    if (*g_human) return write_figure(gen, humanoid_truth(gen));
    if (*g_quad) return write_figure(gen, render_quadruped(gen.body, gen.legs, gen.thickness));
    if (*g_box) return write_figure(gen, render_rigid(RigidKind::Box, gen.width, gen.height));
    if (*g_car) return write_figure(gen, render_rigid(RigidKind::CarLike, gen.width, gen.height));
    if (*g_seq) return write_sequence(gen);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const SpecTooSmall& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
