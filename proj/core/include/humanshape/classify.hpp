#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>

#include "humanshape/imaging.hpp"

namespace humanshape {

// Scores are held as integer tenths so the score table is matched exactly:
// 0.4 is 4, 1.8 is 18.
using Tenths = int;

// 1 iff ratio > threshold (an infinite ratio always qualifies). With an upper
// bound, the ratio must also be <= upper.
int possibility_flag(double ratio, double threshold = 2.3,
                     std::optional<double> upper = std::nullopt);

// 0, 4 or 8 tenths for zero, one or two set flags.
Tenths shape_pos_score(int shapeneck, int shapewaist);

enum class Category {
  NoChange,                // 0
  ChangeNotHuman,          // 0.4
  AlertProbablyNotHuman,   // 0.8
  AlertMostProbablyHuman,  // 1.0
  AlertHuman,              // 1.4
  AlertDefiniteHuman,      // 1.8
};

// Throws InvalidScore for anything outside {0, 4, 8, 10, 14, 18}.
Category map_category(Tenths final_score);
// Accepts decimal scores; anything that is not one of the six table values
// (after a 1e-9 snap to tenths) throws InvalidScore.
Category map_category(double final_score);

bool is_alert(Category category);
std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view name);

enum class Movement { None, Left, Right, Approaching, Receding, Stationary };

std::string_view to_string(Movement movement);
std::optional<Movement> parse_movement(std::string_view name);

struct TrackParams {
  std::size_t window = 10;
  double epsilon_col = 2.0;    // px per frame
  double epsilon_area = 0.05;  // relative bbox growth per frame
};

struct TrackObservation {
  std::int64_t frame_id = 0;
  Centroid centroid;
  double bbox_area = 0.0;
};

// Sliding window of recent object observations for one stream. Movement is
// judged across the whole window: mean column velocity first, then the
// per-frame geometric growth rate of the bounding-box area.
class TrackState {
 public:
  explicit TrackState(TrackParams params = {});

  const std::deque<TrackObservation>& history() const { return history_; }
  const TrackParams& params() const { return params_; }

  // Throws NonMonotoneFrameId when frame_id does not exceed the newest entry.
  Movement update(std::int64_t frame_id, Centroid centroid, double bbox_area);

 private:
  TrackParams params_;
  std::deque<TrackObservation> history_;
};

// Value-semantics form of TrackState::update.
std::pair<TrackState, Movement> update_track(TrackState state, std::int64_t frame_id,
                                             Centroid centroid, double bbox_area);

}  // namespace humanshape
