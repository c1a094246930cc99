#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "humanshape/classify.hpp"
#include "humanshape/config.hpp"
#include "humanshape/features.hpp"
#include "humanshape/image.hpp"
#include "humanshape/imaging.hpp"
#include "humanshape/skeleton.hpp"

namespace humanshape {

struct FrameEntry {
  std::int64_t frame_id = 0;
  std::filesystem::path path;
};

// Frame files with sequence numbers taken from the last run of digits in the
// file stem ("cam_0012.png" is frame 12).
class FrameStream {
 public:
  // Raster files (.png .pgm .ppm .pbm .pnm) in `dir`, ordered by number. Files
  // without digits are ignored; two files with one number throw ConfigError.
  static FrameStream from_directory(const std::filesystem::path& dir);
  // Keeps the given order; throws ConfigError unless numbers strictly increase.
  static FrameStream from_paths(const std::vector<std::filesystem::path>& paths);

  const std::vector<FrameEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<FrameEntry> entries_;
};

std::optional<std::int64_t> sequence_number(const std::filesystem::path& path);

struct BackgroundChoice {
  std::size_t index = 0;
  std::optional<double> correlation;  // empty when r was undefined
  bool changed = false;
};

// Highest-correlation background wins, ties to the lower index. When r is
// undefined (a constant image) the pair counts as r = 1 if the images are
// identical and as no match otherwise. Throws DimensionMismatch.
BackgroundChoice select_background(const std::vector<GrayImage>& backgrounds,
                                   const GrayImage& frame, double r_threshold);

struct Diagnostics {
  std::size_t background_index = 0;
  std::optional<double> correlation;
  std::vector<std::string> stages;  // stages actually run, in order
  std::vector<std::string> notes;
  std::size_t diff_pixels = 0;
  std::size_t object_area = 0;
  std::size_t other_components = 0;
  std::size_t skeleton_pixels = 0;
  std::size_t endpoints = 0;
  std::size_t forks = 0;
  std::size_t branches = 0;
  std::optional<Posture> posture;
  std::vector<ForkRatio> fork_ratios;
  std::vector<Pixel> skipped_forks;
  bool alert = false;
  bool movement_alert = false;
  std::map<std::string, double> timing_ms;  // filled only when timing is on
};

struct DetectionReport {
  std::int64_t frame_id = 0;
  bool changed = false;
  int possibility = 0;
  int shapeneck = 0;
  int shapewaist = 0;
  Tenths shape_pos = 0;
  Tenths final_score = 0;
  Category category = Category::NoChange;
  std::optional<Centroid> centroid;
  std::optional<BoundingBox> bbox;
  Movement movement = Movement::None;
  Diagnostics diagnostics;
};

// Intermediate rasters and structures, for the debug subcommands.
struct FrameArtifacts {
  std::optional<BinaryMask> diff;
  std::optional<BinaryMask> cleaned;
  std::optional<BinaryMask> object;
  std::optional<BinaryMask> thinned;
  std::optional<SkeletonGraph> graph;  // pruned
  std::optional<ShapeFeatures> features;
};

// Full single-frame analysis up to the category. Movement is left at None;
// tracking is applied by the caller in frame order. Pure; safe to call from
// several threads at once.
DetectionReport analyze_frame(const std::vector<GrayImage>& backgrounds, const GrayImage& frame,
                              std::int64_t frame_id, const PipelineConfig& config,
                              bool timing = false, FrameArtifacts* artifacts = nullptr);

// Skeleton stages on an already isolated object mask.
SkeletonGraph skeletonize(const BinaryMask& object, const PipelineConfig& config);

// Fills the score fields of `report` from features.
void score_report(DetectionReport& report, const ShapeFeatures& features,
                  const PipelineConfig& config);

// Applies the tracker to a report; frames without an object leave it untouched.
void apply_tracking(DetectionReport& report, TrackState& tracker, const PipelineConfig& config);

struct FrameError {
  std::int64_t frame_id = 0;
  std::string message;
};

using FrameResult = std::variant<DetectionReport, FrameError>;

struct RunOptions {
  unsigned jobs = 1;
  bool timing = false;
};

// Decodes and analyses frames on up to `jobs` workers; results reach `sink`
// strictly in frame order with the tracker applied serially. Per-frame
// failures become FrameError results.
void run_pipeline(const std::vector<GrayImage>& backgrounds, const FrameStream& frames,
                  const PipelineConfig& config, const RunOptions& options,
                  const std::function<void(const FrameResult&)>& sink);

}  // namespace humanshape
