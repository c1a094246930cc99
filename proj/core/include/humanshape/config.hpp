#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "humanshape/classify.hpp"
#include "humanshape/features.hpp"
#include "humanshape/skeleton.hpp"

namespace humanshape {

struct PipelineConfig {
  double r_threshold = 0.95;
  int intensity_tolerance = 25;
  int min_area = 200;
  int open_radius = 1;
  int close_radius = 2;
  double prune_relative = 0.06;
  double prune_absolute = 5.0;
  double ratio_threshold = 2.3;
  std::optional<double> ratio_upper;
  ShapeRange neck_range = kNeckRange;
  ShapeRange waist_range = kWaistRange;
  int track_window = 10;
  double epsilon_col = 2.0;
  double epsilon_area = 0.05;
  std::vector<Movement> alert_directions{Movement::Approaching};
  StepMetric step_metric = StepMetric::Geodesic;

  // Throws ConfigError on any out-of-domain value.
  void validate() const;

  PruneParams prune_params() const { return {prune_relative, prune_absolute}; }
  FeatureParams feature_params() const { return {neck_range, waist_range}; }
  TrackParams track_params() const;
  bool alerts_on(Movement movement) const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&);
};

// Text format: one `key = value` per line, `#` starts a comment. Ranges are
// written `lo,hi`, direction sets as comma lists (empty for none),
// ratio_upper as a number or `none`, step_metric as `geodesic` or `unit`.
// Keys not given keep their defaults. The result is validated.
PipelineConfig parse_config(std::istream& in);
PipelineConfig parse_config_string(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);

// Every key, in a form parse_config reads back to an equal config.
std::string format_config(const PipelineConfig& config);
void save_config(const std::filesystem::path& path, const PipelineConfig& config);

}  // namespace humanshape
