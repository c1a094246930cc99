#include "humanshape/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <condition_variable>
#include <cctype>
#include <mutex>
#include <limits>
#include <thread>

#include "humanshape/errors.hpp"
#include "humanshape/raster_io.hpp"

namespace humanshape {

namespace {

bool is_raster(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pbm" || ext == ".pnm";
}

class StageClock {
 public:
  StageClock(Diagnostics& diag, bool timing) : diag_(diag), timing_(timing) {}

  template <typename F>
  auto run(const char* name, F&& f) {
    diag_.stages.emplace_back(name);
    if (!timing_) return f();
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      Diagnostics& diag;
      const char* name;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        const std::chrono::duration<double, std::milli> ms =
            std::chrono::steady_clock::now() - start;
        diag.timing_ms[name] = ms.count();
      }
    } record{diag_, name, start};
    return f();
  }

 private:
  Diagnostics& diag_;
  bool timing_;
};

}  // namespace

std::optional<std::int64_t> sequence_number(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  auto last = stem.find_last_of("0123456789");
  if (last == std::string::npos) return std::nullopt;
  auto first = last;
  while (first > 0 && std::isdigit(static_cast<unsigned char>(stem[first - 1]))) --first;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(stem.data() + first, stem.data() + last + 1, value);
  if (ec != std::errc{}) return std::nullopt;
  return value;
}

FrameStream FrameStream::from_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  FrameStream stream;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (!item.is_regular_file() || !is_raster(item.path())) continue;
    const auto n = sequence_number(item.path());
    if (!n) continue;
    stream.entries_.push_back({*n, item.path()});
  }
  std::sort(stream.entries_.begin(), stream.entries_.end(),
            [](const FrameEntry& x, const FrameEntry& y) {
              return x.frame_id != y.frame_id ? x.frame_id < y.frame_id : x.path < y.path;
            });
  for (std::size_t i = 1; i < stream.entries_.size(); ++i) {
    if (stream.entries_[i].frame_id == stream.entries_[i - 1].frame_id) {
      throw ConfigError("frames " + stream.entries_[i - 1].path.filename().string() + " and " +
                        stream.entries_[i].path.filename().string() + " share a number");
    }
  }
  return stream;
}

FrameStream FrameStream::from_paths(const std::vector<std::filesystem::path>& paths) {
  FrameStream stream;
  for (const auto& p : paths) {
    const auto n = sequence_number(p);
    if (!n) throw ConfigError("no frame number in " + p.filename().string());
    if (!stream.entries_.empty() && *n <= stream.entries_.back().frame_id) {
      throw ConfigError("frame numbers must increase: " + p.filename().string());
    }
    stream.entries_.push_back({*n, p});
  }
  return stream;
}

BackgroundChoice select_background(const std::vector<GrayImage>& backgrounds,
                                   const GrayImage& frame, double r_threshold) {
  if (backgrounds.empty()) throw ConfigError("at least one background is required");
  BackgroundChoice best;
  double best_rank = -std::numeric_limits<double>::infinity();
  bool have = false;
  for (std::size_t i = 0; i < backgrounds.size(); ++i) {
    const GrayImage& bg = backgrounds[i];
    if (bg.width() != frame.width() || bg.height() != frame.height()) {
      throw DimensionMismatch("background " + std::to_string(i) + " is " +
                              std::to_string(bg.width()) + "x" + std::to_string(bg.height()) +
                              ", frame is " + std::to_string(frame.width()) + "x" +
                              std::to_string(frame.height()));
    }
    BackgroundChoice c;
    c.index = i;
    double rank = 0.0;
    try {
      c.correlation = correlation(bg, frame);
      rank = *c.correlation;
      c.changed = *c.correlation < r_threshold;
    } catch (const DegenerateImage&) {
      c.changed = !(bg == frame);
      rank = c.changed ? -std::numeric_limits<double>::infinity() : 1.0;
    }
    if (!have || rank > best_rank) {
      best = c;
      best_rank = rank;
      have = true;
    }
  }
  return best;
}

SkeletonGraph skeletonize(const BinaryMask& object, const PipelineConfig& config) {
  return prune(build_graph(thin(object), config.step_metric), config.prune_params());
}

void score_report(DetectionReport& report, const ShapeFeatures& features,
                  const PipelineConfig& config) {
  report.possibility =
      possibility_flag(features.posture.ratio, config.ratio_threshold, config.ratio_upper);
  report.shapeneck = features.flags.shapeneck;
  report.shapewaist = features.flags.shapewaist;
  report.shape_pos = shape_pos_score(report.shapeneck, report.shapewaist);
  report.final_score = report.possibility * 10 + report.shape_pos;
  report.category = map_category(report.final_score);
  report.diagnostics.alert = is_alert(report.category);
}

DetectionReport analyze_frame(const std::vector<GrayImage>& backgrounds, const GrayImage& frame,
                              std::int64_t frame_id, const PipelineConfig& config, bool timing,
                              FrameArtifacts* artifacts) {
  DetectionReport report;
  report.frame_id = frame_id;
  Diagnostics& diag = report.diagnostics;
  StageClock clock(diag, timing);

  const BackgroundChoice choice = clock.run(
      "select_background", [&] { return select_background(backgrounds, frame, config.r_threshold); });
  diag.background_index = choice.index;
  diag.correlation = choice.correlation;
  report.changed = choice.changed;
  if (!report.changed) return report;

  const GrayImage& background = backgrounds[choice.index];
  BinaryMask diff =
      clock.run("diff", [&] { return diff_mask(background, frame, config.intensity_tolerance); });
  diag.diff_pixels = diff.foreground_count();
  BinaryMask cleaned =
      clock.run("clean", [&] { return clean_mask(diff, config.open_radius, config.close_radius); });
  auto object = clock.run("extract", [&] {
    return extract_largest(cleaned, static_cast<std::size_t>(config.min_area));
  });
  if (artifacts) {
    artifacts->diff = std::move(diff);
    artifacts->cleaned = std::move(cleaned);
  }
  if (!object) {
    diag.notes.emplace_back("no object reaches min_area");
    return report;
  }
  diag.object_area = object->stats.area;
  diag.other_components = object->others.size();
  report.centroid = object->stats.centroid;
  report.bbox = object->stats.bbox;

  BinaryMask thinned = clock.run("thin", [&] { return thin(object->mask); });
  SkeletonGraph raw =
      clock.run("graph", [&] { return build_graph(thinned, config.step_metric); });
  SkeletonGraph graph = clock.run("prune", [&] { return prune(raw, config.prune_params()); });
  diag.skeleton_pixels = graph.mask().foreground_count();
  diag.endpoints = graph.count_of_kind(PointKind::Endpoint);
  diag.forks = graph.count_of_kind(PointKind::Fork);
  diag.branches = graph.branches().size();
  if (artifacts) {
    artifacts->object = object->mask;
    artifacts->thinned = std::move(thinned);
  }

  std::optional<ShapeFeatures> features;
  try {
    features = clock.run("features", [&] { return compute_features(graph, config.feature_params()); });
  } catch (const TooFewEndpoints& e) {
    diag.notes.emplace_back(e.what());
  }
  if (features) {
    diag.posture = features->posture;
    diag.fork_ratios = features->fork_ratios;
    diag.skipped_forks = features->skipped_forks;
    if (!features->skipped_forks.empty()) diag.notes.emplace_back("fork at a path end skipped");
    clock.run("score", [&] { score_report(report, *features, config); });
  }
  if (artifacts) {
    artifacts->graph = std::move(graph);
    artifacts->features = std::move(features);
  }
  return report;
}

void apply_tracking(DetectionReport& report, TrackState& tracker, const PipelineConfig& config) {
  if (!report.centroid || !report.bbox) return;
  report.movement = tracker.update(report.frame_id, *report.centroid,
                                   static_cast<double>(report.bbox->area()));
  report.diagnostics.movement_alert = config.alerts_on(report.movement);
}

void run_pipeline(const std::vector<GrayImage>& backgrounds, const FrameStream& frames,
                  const PipelineConfig& config, const RunOptions& options,
                  const std::function<void(const FrameResult&)>& sink) {
  config.validate();
  const auto& entries = frames.entries();
  const std::size_t n = entries.size();

  auto process = [&](std::size_t i) -> FrameResult {
    try {
      const GrayImage frame = read_image(entries[i].path);
      return analyze_frame(backgrounds, frame, entries[i].frame_id, config, options.timing);
    } catch (const std::exception& e) {
      return FrameError{entries[i].frame_id, e.what()};
    }
  };

  TrackState tracker(config.track_params());
  auto emit = [&](FrameResult& result) {
    if (auto* report = std::get_if<DetectionReport>(&result)) {
      apply_tracking(*report, tracker, config);
    }
    sink(result);
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      FrameResult r = process(i);
      emit(r);
    }
    return;
  }

  // Workers may run at most `capacity` frames ahead of the emitter.
  const std::size_t capacity = 2 * static_cast<std::size_t>(jobs);
  std::vector<std::optional<FrameResult>> slots(n);
  std::mutex mutex;
  std::condition_variable ready;
  std::condition_variable space;
  std::size_t next = 0;
  std::size_t emitted = 0;
  bool stop = false;

  auto worker = [&] {
    while (true) {
      std::size_t i = 0;
      {
        std::unique_lock lock(mutex);
        space.wait(lock, [&] { return stop || next >= n || next < emitted + capacity; });
        if (stop || next >= n) return;
        i = next++;
      }
      FrameResult r = process(i);
      {
        std::lock_guard lock(mutex);
        slots[i] = std::move(r);
      }
      ready.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  struct Stopper {
    std::mutex& mutex;
    bool& stop;
    std::condition_variable& space;
    ~Stopper() {
      {
        std::lock_guard lock(mutex);
        stop = true;
      }
      space.notify_all();
    }
  };
  // Declared after the pool so it runs first on unwind and wakes idle workers.
  const auto worker_count = std::min<std::size_t>(jobs, n);
  for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(worker);
  Stopper stopper{mutex, stop, space};

  for (std::size_t e = 0; e < n; ++e) {
    FrameResult result;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[e].has_value(); });
      result = std::move(*slots[e]);
      slots[e].reset();
      emitted = e + 1;
    }
    space.notify_all();
    emit(result);
  }
}

}  // namespace humanshape
