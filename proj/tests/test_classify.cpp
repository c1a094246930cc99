#include <cmath>
#include <limits>

#include "doctest.h"
#include "humanshape/classify.hpp"
#include "humanshape/errors.hpp"
#include "support/generators.hpp"

using namespace humanshape;

TEST_CASE("possibility flag") {
  CHECK(possibility_flag(2.837) == 1);
  CHECK(possibility_flag(2.3) == 0);
  CHECK(possibility_flag(std::nextafter(2.3, 3.0)) == 1);
  CHECK(possibility_flag(std::numeric_limits<double>::infinity()) == 1);
  CHECK(possibility_flag(0.5) == 0);
  CHECK(possibility_flag(3.0, 2.3, 4.0) == 1);
  CHECK(possibility_flag(5.0, 2.3, 4.0) == 0);
  CHECK(possibility_flag(std::numeric_limits<double>::infinity(), 2.3, 4.0) == 0);
  CHECK_THROWS_AS(possibility_flag(3.0, 0.0), ConfigError);
  CHECK_THROWS_AS(possibility_flag(3.0, 2.3, 2.0), ConfigError);
}

TEST_CASE("shape position score") {
  CHECK(shape_pos_score(0, 0) == 0);
  CHECK(shape_pos_score(1, 0) == 4);
  CHECK(shape_pos_score(0, 1) == 4);
  CHECK(shape_pos_score(1, 1) == 8);
  CHECK_THROWS_AS(shape_pos_score(2, 0), InvalidScore);
}

TEST_CASE("score table") {
  CHECK(map_category(0) == Category::NoChange);
  CHECK(map_category(4) == Category::ChangeNotHuman);
  CHECK(map_category(8) == Category::AlertProbablyNotHuman);
  CHECK(map_category(10) == Category::AlertMostProbablyHuman);
  CHECK(map_category(14) == Category::AlertHuman);
  CHECK(map_category(18) == Category::AlertDefiniteHuman);
  CHECK(map_category(1.4) == Category::AlertHuman);
  CHECK(map_category(0.4 + 1.4) == Category::AlertDefiniteHuman);
  CHECK_THROWS_AS(map_category(0.9), InvalidScore);
  CHECK_THROWS_AS(map_category(std::nan("")), InvalidScore);

  int legal = 0;
  for (Tenths t = -30; t <= 40; ++t) {
    const bool ok = t == 0 || t == 4 || t == 8 || t == 10 || t == 14 || t == 18;
    if (ok) {
      ++legal;
      CHECK_NOTHROW(map_category(t));
      CHECK(is_alert(map_category(t)) == (t >= 8));
    } else {
      CHECK_THROWS_AS(map_category(t), InvalidScore);
    }
  }
  CHECK(legal == 6);
}

TEST_CASE("every possibility and flag combination lands on the table") {
  for (int p = 0; p <= 1; ++p)
    for (int n = 0; n <= 1; ++n)
      for (int w = 0; w <= 1; ++w) CHECK_NOTHROW(map_category(p * 10 + shape_pos_score(n, w)));
}

TEST_CASE("names round-trip") {
  for (int t : {0, 4, 8, 10, 14, 18}) {
    const Category c = map_category(t);
    CHECK(parse_category(to_string(c)) == c);
  }
  for (Movement m : {Movement::None, Movement::Left, Movement::Right, Movement::Approaching,
                     Movement::Receding, Movement::Stationary})
    CHECK(parse_movement(to_string(m)) == m);
  CHECK_FALSE(parse_movement("Up").has_value());
  CHECK(to_string(Category::AlertDefiniteHuman) == "AlertDefiniteHuman");
}

TEST_CASE("track examples") {
  TrackState one;
  CHECK(one.update(1, {10, 50}, 400) == Movement::None);

  TrackState left;
  left.update(1, {10, 50}, 400);
  left.update(2, {10, 40}, 400);
  CHECK(left.update(3, {10, 30}, 400) == Movement::Left);

  TrackState right;
  right.update(1, {10, 30}, 400);
  CHECK(right.update(2, {10, 40}, 400) == Movement::Right);

  TrackState near;
  near.update(1, {10, 50}, 400);
  near.update(2, {10, 50}, 500);
  CHECK(near.update(3, {10, 50}, 650) == Movement::Approaching);

  TrackState far;
  far.update(1, {10, 50}, 650);
  CHECK(far.update(2, {10, 50}, 500) == Movement::Receding);

  TrackState still;
  still.update(1, {10, 50}, 400);
  CHECK(still.update(2, {10, 51}, 410) == Movement::Stationary);

  CHECK_THROWS_AS(still.update(2, {10, 50}, 400), NonMonotoneFrameId);
  CHECK_THROWS_AS(still.update(1, {10, 50}, 400), NonMonotoneFrameId);
}

TEST_CASE("track velocity uses frame gaps") {
  TrackState t;
  t.update(10, {0, 100}, 400);
  // 15 px over 10 frames is 1.5 px per frame, below the threshold
  CHECK(t.update(20, {0, 85}, 400) == Movement::Stationary);
}

TEST_CASE("track window is bounded") {
  TrackState t({4, 2.0, 0.05});
  for (int i = 1; i <= 9; ++i) t.update(i, {0, 0}, 100);
  CHECK(t.history().size() == 4);
  CHECK(t.history().front().frame_id == 6);
  CHECK_THROWS_AS(TrackState({1, 2.0, 0.05}), ConfigError);
}

TEST_CASE("movement is invariant under translating the history") {
  gen::Rng rng(41);
  std::uniform_real_distribution<double> step(-15.0, 15.0);
  std::uniform_real_distribution<double> grow(0.8, 1.25);
  for (int i = 0; i < 100; ++i) {
    const double dr = step(rng) * 10, dc = step(rng) * 10;
    TrackState a, b;
    double row = 50, col = 200, area = 1000;
    for (int f = 1; f <= 12; ++f) {
      row += step(rng) / 3;
      col += step(rng) / 3;
      area *= grow(rng);
      const Movement ma = a.update(f, {row, col}, area);
      const Movement mb = b.update(f, {row + dr, col + dc}, area);
      CHECK(ma == mb);
    }
  }
}

TEST_CASE("update_track keeps the input state") {
  TrackState s;
  auto [next, m] = update_track(s, 1, {0, 0}, 100);
  CHECK(m == Movement::None);
  CHECK(s.history().empty());
  CHECK(next.history().size() == 1);
}
