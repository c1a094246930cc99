#include "humanshape/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "humanshape/errors.hpp"

namespace humanshape {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(std::string_view(s).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_real(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return value;
}

int to_int(const std::string& key, const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

ShapeRange to_range(const std::string& key, const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 2) throw ConfigError(key + ": expected 'lo,hi', got '" + text + "'");
  return {to_real(key, parts[0]), to_real(key, parts[1])};
}

std::string real_text(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void apply(PipelineConfig& c, const std::string& key, const std::string& value) {
  if (key == "r_threshold") {
    c.r_threshold = to_real(key, value);
  } else if (key == "intensity_tolerance") {
    c.intensity_tolerance = to_int(key, value);
  } else if (key == "min_area") {
    c.min_area = to_int(key, value);
  } else if (key == "open_radius") {
    c.open_radius = to_int(key, value);
  } else if (key == "close_radius") {
    c.close_radius = to_int(key, value);
  } else if (key == "prune_relative") {
    c.prune_relative = to_real(key, value);
  } else if (key == "prune_absolute") {
    c.prune_absolute = to_real(key, value);
  } else if (key == "ratio_threshold") {
    c.ratio_threshold = to_real(key, value);
  } else if (key == "ratio_upper") {
    if (value == "none" || value.empty()) {
      c.ratio_upper.reset();
    } else {
      c.ratio_upper = to_real(key, value);
    }
  } else if (key == "neck_range") {
    c.neck_range = to_range(key, value);
  } else if (key == "waist_range") {
    c.waist_range = to_range(key, value);
  } else if (key == "track_window") {
    c.track_window = to_int(key, value);
  } else if (key == "epsilon_col") {
    c.epsilon_col = to_real(key, value);
  } else if (key == "epsilon_area") {
    c.epsilon_area = to_real(key, value);
  } else if (key == "alert_directions") {
    c.alert_directions.clear();
    if (value.empty()) return;
    for (const auto& name : split_commas(value)) {
      const auto m = parse_movement(name);
      if (!m) throw ConfigError(key + ": unknown movement '" + name + "'");
      c.alert_directions.push_back(*m);
    }
  } else if (key == "step_metric") {
    if (value == "geodesic") {
      c.step_metric = StepMetric::Geodesic;
    } else if (value == "unit") {
      c.step_metric = StepMetric::Unit;
    } else {
      throw ConfigError(key + ": expected geodesic or unit, got '" + value + "'");
    }
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(r_threshold > -1.0 && r_threshold <= 1.0)) {
    throw ConfigError("r_threshold must lie in (-1, 1]");
  }
  if (intensity_tolerance < 0 || intensity_tolerance > 255) {
    throw ConfigError("intensity_tolerance must lie in [0, 255]");
  }
  if (min_area < 1) throw ConfigError("min_area must be >= 1");
  if (open_radius < 0 || close_radius < 0) throw ConfigError("morphology radii must be >= 0");
  if (!(prune_relative >= 0.0) || !(prune_absolute >= 0.0)) {
    throw ConfigError("prune thresholds must be >= 0");
  }
  if (!(ratio_threshold > 0.0)) throw ConfigError("ratio_threshold must be positive");
  if (ratio_upper && !(*ratio_upper >= ratio_threshold)) {
    throw ConfigError("ratio_upper must be >= ratio_threshold");
  }
  humanshape::validate(neck_range, "neck_range");
  humanshape::validate(waist_range, "waist_range");
  if (track_window < 2) throw ConfigError("track_window must be >= 2");
  if (!(epsilon_col > 0.0) || !(epsilon_area > 0.0)) {
    throw ConfigError("movement thresholds must be positive");
  }
}

TrackParams PipelineConfig::track_params() const {
  return {static_cast<std::size_t>(track_window), epsilon_col, epsilon_area};
}

bool PipelineConfig::alerts_on(Movement movement) const {
  return std::find(alert_directions.begin(), alert_directions.end(), movement) !=
         alert_directions.end();
}

bool operator==(const PipelineConfig& x, const PipelineConfig& y) {
  auto same_range = [](ShapeRange a, ShapeRange b) { return a.lo == b.lo && a.hi == b.hi; };
  return x.r_threshold == y.r_threshold && x.intensity_tolerance == y.intensity_tolerance &&
         x.min_area == y.min_area && x.open_radius == y.open_radius &&
         x.close_radius == y.close_radius && x.prune_relative == y.prune_relative &&
         x.prune_absolute == y.prune_absolute && x.ratio_threshold == y.ratio_threshold &&
         x.ratio_upper == y.ratio_upper && same_range(x.neck_range, y.neck_range) &&
         same_range(x.waist_range, y.waist_range) && x.track_window == y.track_window &&
         x.epsilon_col == y.epsilon_col && x.epsilon_area == y.epsilon_area &&
         x.alert_directions == y.alert_directions && x.step_metric == y.step_metric;
}

PipelineConfig parse_config(std::istream& in) {
  PipelineConfig config;
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
    apply(config, key, value);
  }
  config.validate();
  return config;
}

PipelineConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_config(in);
}

std::string format_config(const PipelineConfig& c) {
  std::ostringstream out;
  out << "r_threshold = " << real_text(c.r_threshold) << '\n'
      << "intensity_tolerance = " << c.intensity_tolerance << '\n'
      << "min_area = " << c.min_area << '\n'
      << "open_radius = " << c.open_radius << '\n'
      << "close_radius = " << c.close_radius << '\n'
      << "prune_relative = " << real_text(c.prune_relative) << '\n'
      << "prune_absolute = " << real_text(c.prune_absolute) << '\n'
      << "ratio_threshold = " << real_text(c.ratio_threshold) << '\n'
      << "ratio_upper = " << (c.ratio_upper ? real_text(*c.ratio_upper) : "none") << '\n'
      << "neck_range = " << real_text(c.neck_range.lo) << ',' << real_text(c.neck_range.hi) << '\n'
      << "waist_range = " << real_text(c.waist_range.lo) << ',' << real_text(c.waist_range.hi)
      << '\n'
      << "track_window = " << c.track_window << '\n'
      << "epsilon_col = " << real_text(c.epsilon_col) << '\n'
      << "epsilon_area = " << real_text(c.epsilon_area) << '\n'
      << "alert_directions = ";
  for (std::size_t i = 0; i < c.alert_directions.size(); ++i) {
    if (i) out << ',';
    out << to_string(c.alert_directions[i]);
  }
  out << '\n'
      << "step_metric = " << (c.step_metric == StepMetric::Unit ? "unit" : "geodesic") << '\n';
  return out.str();
}

void save_config(const std::filesystem::path& path, const PipelineConfig& config) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config " + path.string());
  out << format_config(config);
  if (!out) throw IoError("failed writing config " + path.string());
}

}  // namespace humanshape
