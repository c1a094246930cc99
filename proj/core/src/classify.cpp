#include "humanshape/classify.hpp"

#include <array>
#include <cmath>
#include <string>

#include "humanshape/errors.hpp"

namespace humanshape {
namespace {

constexpr std::array<std::string_view, 6> kCategoryNames = {
    "NoChange",          "ChangeNotHuman", "AlertProbablyNotHuman",
    "AlertMostProbablyHuman", "AlertHuman", "AlertDefiniteHuman"};

constexpr std::array<std::string_view, 6> kMovementNames = {
    "None", "Left", "Right", "Approaching", "Receding", "Stationary"};

}  // namespace

int possibility_flag(double ratio, double threshold, std::optional<double> upper) {
  if (!(threshold > 0.0)) throw ConfigError("ratio threshold must be positive");
  if (upper && !(*upper >= threshold)) throw ConfigError("ratio upper bound below threshold");
  if (!(ratio > threshold)) return 0;
  if (upper && ratio > *upper) return 0;
  return 1;
}

Tenths shape_pos_score(int shapeneck, int shapewaist) {
  if ((shapeneck != 0 && shapeneck != 1) || (shapewaist != 0 && shapewaist != 1)) {
    throw InvalidScore("shape flags must be 0 or 1");
  }
  return 4 * (shapeneck + shapewaist);
}

Category map_category(Tenths final_score) {
  switch (final_score) {
    case 0: return Category::NoChange;
    case 4: return Category::ChangeNotHuman;
    case 8: return Category::AlertProbablyNotHuman;
    case 10: return Category::AlertMostProbablyHuman;
    case 14: return Category::AlertHuman;
    case 18: return Category::AlertDefiniteHuman;
    default: break;
  }
  throw InvalidScore("final score " + std::to_string(final_score / 10.0) +
                     " is not in {0, 0.4, 0.8, 1, 1.4, 1.8}");
}

Category map_category(double final_score) {
  const double tenths = final_score * 10.0;
  const double snapped = std::round(tenths);
  if (!std::isfinite(tenths) || std::abs(tenths - snapped) > 1e-9 || std::abs(snapped) > 1e6) {
    throw InvalidScore("final score " + std::to_string(final_score) + " is not a table value");
  }
  return map_category(static_cast<Tenths>(snapped));
}

bool is_alert(Category category) {
  return category == Category::AlertProbablyNotHuman ||
         category == Category::AlertMostProbablyHuman || category == Category::AlertHuman ||
         category == Category::AlertDefiniteHuman;
}

std::string_view to_string(Category category) {
  return kCategoryNames[static_cast<std::size_t>(category)];
}

std::optional<Category> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<Category>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Movement movement) {
  return kMovementNames[static_cast<std::size_t>(movement)];
}

std::optional<Movement> parse_movement(std::string_view name) {
  for (std::size_t i = 0; i < kMovementNames.size(); ++i) {
    if (kMovementNames[i] == name) return static_cast<Movement>(i);
  }
  return std::nullopt;
}

TrackState::TrackState(TrackParams params) : params_(params) {
  if (params_.window < 2) throw ConfigError("track window must hold at least 2 frames");
  if (!(params_.epsilon_col > 0.0) || !(params_.epsilon_area > 0.0)) {
    throw ConfigError("movement thresholds must be positive");
  }
}

Movement TrackState::update(std::int64_t frame_id, Centroid centroid, double bbox_area) {
  if (!history_.empty() && frame_id <= history_.back().frame_id) {
    throw NonMonotoneFrameId("frame " + std::to_string(frame_id) + " after " +
                             std::to_string(history_.back().frame_id));
  }
  history_.push_back({frame_id, centroid, bbox_area});
  while (history_.size() > params_.window) history_.pop_front();
  if (history_.size() < 2) return Movement::None;

  const TrackObservation& first = history_.front();
  const TrackObservation& last = history_.back();
  const double frames = static_cast<double>(last.frame_id - first.frame_id);
  const double col_velocity = (last.centroid.col - first.centroid.col) / frames;
  if (col_velocity < -params_.epsilon_col) return Movement::Left;
  if (col_velocity > params_.epsilon_col) return Movement::Right;

  if (first.bbox_area > 0.0 && last.bbox_area > 0.0) {
    const double growth = std::pow(last.bbox_area / first.bbox_area, 1.0 / frames) - 1.0;
    if (growth > params_.epsilon_area) return Movement::Approaching;
    if (growth < -params_.epsilon_area) return Movement::Receding;
  }
  return Movement::Stationary;
}

std::pair<TrackState, Movement> update_track(TrackState state, std::int64_t frame_id,
                                             Centroid centroid, double bbox_area) {
  const Movement m = state.update(frame_id, centroid, bbox_area);
  return {std::move(state), m};
}

}  // namespace humanshape
