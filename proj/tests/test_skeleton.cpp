#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "humanshape/errors.hpp"
#include "humanshape/skeleton.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace humanshape;

namespace {

const double kRoot2 = std::sqrt(2.0);

BinaryMask from_pixels(int w, int h, const std::vector<Pixel>& pixels) {
  BinaryMask m(w, h);
  for (auto p : pixels) m.set(p, true);
  return m;
}

BinaryMask solid(int w, int h) {
  BinaryMask m(w + 4, h + 4);
  for (int r = 2; r < h + 2; ++r)
    for (int c = 2; c < w + 2; ++c) m.set(r, c, true);
  return m;
}

BinaryMask disk(int radius) {
  const int side = 2 * radius + 5;
  BinaryMask m(side, side);
  const int cy = side / 2;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      if ((r - cy) * (r - cy) + (c - cy) * (c - cy) <= radius * radius) m.set(r, c, true);
  return m;
}

int count(const std::vector<SkeletonPoint>& pts, PointKind k) {
  int n = 0;
  for (const auto& p : pts) n += p.kind == k;
  return n;
}

// Bar on row 2 with the junction pixel dropped, stem below it: the minimal
// 8-connected "T" that thinning produces.
BinaryMask tee(int left, int right, int stem) {
  BinaryMask m(left + right + 5, stem + 5);
  const int jc = left + 2;
  for (int c = jc - left; c <= jc + right; ++c)
    if (c != jc) m.set(2, c, true);
  for (int r = 3; r <= 2 + stem; ++r) m.set(r, jc, true);
  return m;
}

}  // namespace

TEST_CASE("thin leaves a one-pixel line unchanged") {
  BinaryMask line(5, 24);
  for (int r = 2; r < 22; ++r) line.set(r, 2, true);
  CHECK(thin(line) == line);
}

TEST_CASE("thin reduces a 21x3 bar to a horizontal line") {
  const BinaryMask bar = solid(21, 3);
  const BinaryMask ref = oracle::zhang_suen(bar);
  const std::size_t ref_len = ref.foreground_count();
  CHECK(ref_len >= 17);
  CHECK(ref_len <= 21);

  const BinaryMask s = thin(bar);
  const auto pts = s.foreground_pixels();
  CHECK(pts.size() >= 17);
  CHECK(pts.size() <= 21);
  for (auto p : pts) CHECK(p.row == pts.front().row);
  const auto kinds = classify_points(s);
  CHECK(count(kinds, PointKind::Endpoint) == 2);
  CHECK(count(kinds, PointKind::Fork) == 0);
}

TEST_CASE("thin collapses a radius 10 disk to a small cluster") {
  const BinaryMask s = thin(disk(10));
  CHECK(s.foreground_count() >= 1);
  CHECK(s.foreground_count() <= 5);
  CHECK(oracle::component_count(s) == 1);
}

TEST_CASE("thin rejects an empty mask") {
  CHECK_THROWS_AS(thin(BinaryMask(4, 4)), EmptyMask);
}

TEST_CASE("thin output is thin, a subset, and keeps components") {
  gen::Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const BinaryMask m = gen::noise_mask(rng, 30, 30, 0.55);
    if (m.empty()) continue;
    const BinaryMask s = thin(m);
    CHECK_FALSE(oracle::has_2x2(s));
    CHECK(oracle::component_count(s) == oracle::component_count(m));
    for (std::size_t k = 0; k < s.size(); ++k) CHECK((!s.bits()[k] || m.bits()[k]));
    CHECK(thin(m) == s);
    CHECK(thin(s) == s);
  }
}

TEST_CASE("classify points") {
  BinaryMask line(7, 3);
  for (int c = 1; c <= 5; ++c) line.set(1, c, true);
  auto pts = classify_points(line);
  CHECK(count(pts, PointKind::Endpoint) == 2);
  CHECK(count(pts, PointKind::Regular) == 3);
  CHECK(count(pts, PointKind::Fork) == 0);

  pts = classify_points(tee(4, 4, 6));
  CHECK(count(pts, PointKind::Endpoint) == 3);
  REQUIRE(count(pts, PointKind::Fork) == 1);
  for (const auto& p : pts)
    if (p.kind == PointKind::Fork) CHECK(p.degree == 3);

  // "+" turned 45 degrees so the arms meet only at the centre
  BinaryMask plus(11, 11);
  for (int k = -4; k <= 4; ++k) {
    plus.set(5 + k, 5 + k, true);
    plus.set(5 + k, 5 - k, true);
  }
  pts = classify_points(plus);
  CHECK(count(pts, PointKind::Endpoint) == 4);
  REQUIRE(count(pts, PointKind::Fork) == 1);
  for (const auto& p : pts)
    if (p.kind == PointKind::Fork) CHECK(p.degree == 4);

  BinaryMask block(4, 4);
  block.set(1, 1, true);
  block.set(1, 2, true);
  block.set(2, 1, true);
  block.set(2, 2, true);
  CHECK_THROWS_AS(classify_points(block), NotThin);
}

TEST_CASE("point kinds depend only on the 3x3 neighbourhood") {
  gen::Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const BinaryMask s = gen::thin_skeleton(rng, 25, 14);
    const auto base = classify_points(s);
    // add a far-away pixel
    BinaryMask bigger(s.width() + 10, s.height() + 10);
    for (auto p : s.foreground_pixels()) bigger.set(p, true);
    bigger.set(bigger.height() - 1, bigger.width() - 1, true);
    const auto more = classify_points(bigger);
    for (const auto& p : base) {
      bool found = false;
      for (const auto& q : more)
        if (q.position == p.position) {
          CHECK(q.kind == p.kind);
          CHECK(q.degree == p.degree);
          found = true;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("build graph: straight line") {
  BinaryMask line(12, 3);
  for (int c = 1; c <= 10; ++c) line.set(1, c, true);
  const SkeletonGraph g = build_graph(line);
  REQUIRE(g.branches().size() == 1);
  CHECK(g.count_of_kind(PointKind::Endpoint) == 2);
  CHECK(g.branches()[0].geodesic_length == doctest::Approx(9.0));
  CHECK(g.branches()[0].path.size() == 10);
}

TEST_CASE("build graph: T with arms 10, 10, 20") {
  const SkeletonGraph g = build_graph(tee(10, 10, 20));
  CHECK(g.count_of_kind(PointKind::Fork) == 1);
  CHECK(g.count_of_kind(PointKind::Endpoint) == 3);
  REQUIRE(g.branches().size() == 3);
  std::multiset<double> lengths;
  for (const auto& b : g.branches()) lengths.insert(b.geodesic_length);
  auto it = lengths.begin();
  CHECK(std::abs(*it++ - 10.0) <= kRoot2);
  CHECK(std::abs(*it++ - 10.0) <= kRoot2);
  CHECK(std::abs(*it - 20.0) <= kRoot2);
  const auto fork = g.nodes_of_kind(PointKind::Fork).front();
  CHECK(g.adjacency()[fork].size() == 3);
}

TEST_CASE("build graph: axis-aligned plus merges its fork cluster") {
  BinaryMask plus(13, 13);
  for (int k = 1; k <= 11; ++k) {
    plus.set(6, k, true);
    plus.set(k, 6, true);
  }
  const SkeletonGraph g = build_graph(plus);
  CHECK(g.count_of_kind(PointKind::Fork) == 1);
  CHECK(g.count_of_kind(PointKind::Endpoint) == 4);
  CHECK(g.branches().size() == 4);
  CHECK(g.nodes()[g.nodes_of_kind(PointKind::Fork).front()].position == Pixel{6, 6});
}

TEST_CASE("build graph: closed ring is one self-loop") {
  const BinaryMask ring = from_pixels(
      6, 6, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 3}, {4, 2}, {3, 1}, {2, 1}});
  const SkeletonGraph g = build_graph(ring);
  REQUIRE(g.branches().size() == 1);
  const Branch& b = g.branches()[0];
  CHECK(b.is_loop());
  CHECK(g.count_of_kind(PointKind::Endpoint) == 0);
  CHECK(g.count_of_kind(PointKind::Fork) == 0);
  CHECK(b.path.front() == b.path.back());
  CHECK(b.path.size() == 9);
  CHECK(b.geodesic_length == doctest::Approx(4.0 + 4.0 * kRoot2));
  CHECK(g.adjacency()[b.a].size() == 2);
}

TEST_CASE("build graph errors") {
  CHECK_THROWS_AS(build_graph(BinaryMask(3, 3)), EmptyMask);
  CHECK_THROWS_AS(build_graph(solid(3, 3)), NotThin);
}

TEST_CASE("unit metric counts every step as 1") {
  BinaryMask diag(8, 8);
  for (int k = 0; k < 6; ++k) diag.set(k, k, true);
  CHECK(build_graph(diag, StepMetric::Geodesic).branches()[0].geodesic_length ==
        doctest::Approx(5 * kRoot2));
  CHECK(build_graph(diag, StepMetric::Unit).branches()[0].geodesic_length == doctest::Approx(5.0));
}

namespace {

// Fork degree is only promised on minimal (thinned) skeletons.
void check_graph_invariants(const BinaryMask& s, bool minimal) {
  const SkeletonGraph g = build_graph(s);

  // branches: ends on terminals, 8-adjacent steps, length >= chord
  for (const auto& b : g.branches()) {
    REQUIRE_FALSE(b.path.empty());
    CHECK(g.nodes()[b.a].contains(b.path.front()));
    CHECK(g.nodes()[b.b].contains(b.path.back()));
    for (std::size_t k = 1; k < b.path.size(); ++k) CHECK(adjacent8(b.path[k - 1], b.path[k]));
    const double dr = b.path.front().row - b.path.back().row;
    const double dc = b.path.front().col - b.path.back().col;
    CHECK(b.geodesic_length >= std::hypot(dr, dc) - 1e-9);
    CHECK(b.geodesic_length == doctest::Approx(path_length(b.path, StepMetric::Geodesic)));
  }

  // endpoints in exactly one branch, forks in three or more
  for (std::size_t n = 0; n < g.nodes().size(); ++n) {
    const auto kind = g.nodes()[n].kind;
    if (kind == PointKind::Endpoint && g.nodes()[n].pixels.size() == 1 &&
        s.foreground_count() > 1) {
      CHECK(g.adjacency()[n].size() == 1);
    }
    if (kind == PointKind::Fork && minimal) CHECK(g.adjacency()[n].size() >= 3);
  }

  // node pixels plus exclusive interiors rebuild the skeleton
  std::set<Pixel> node_pixels;
  for (const auto& n : g.nodes()) node_pixels.insert(n.pixels.begin(), n.pixels.end());
  std::multiset<Pixel> interiors;
  for (const auto& b : g.branches())
    for (auto p : b.path)
      if (!node_pixels.count(p)) interiors.insert(p);
  std::set<Pixel> unique(interiors.begin(), interiors.end());
  CHECK(unique.size() == interiors.size());
  std::set<Pixel> all = node_pixels;
  all.insert(unique.begin(), unique.end());
  const auto fg = s.foreground_pixels();
  CHECK(all == std::set<Pixel>(fg.begin(), fg.end()));
}

}  // namespace

TEST_CASE("graph invariants on random skeletons") {
  gen::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const BinaryMask raw = gen::thin_skeleton(rng, gen::uniform(rng, 1, 30), 14);
    check_graph_invariants(raw, false);
    check_graph_invariants(thin(raw), true);
  }
}

TEST_CASE("prune removes a short spur and dissolves its fork") {
  BinaryMask m(20, 104);
  for (int r = 2; r <= 102; ++r) m.set(r, 10, true);
  for (int c = 11; c <= 13; ++c) m.set(52, c, true);
  const SkeletonGraph g = build_graph(m);
  REQUIRE(g.count_of_kind(PointKind::Fork) == 1);
  const SkeletonGraph p = prune(g);
  REQUIRE(p.branches().size() == 1);
  CHECK(p.count_of_kind(PointKind::Fork) == 0);
  CHECK(p.count_of_kind(PointKind::Endpoint) == 2);
  CHECK_FALSE(p.mask().at(52, 12));
  CHECK_FALSE(p.mask().at(52, 13));
  CHECK(p.mask().at(2, 10));
  CHECK(p.mask().at(102, 10));
  CHECK(p.branches()[0].geodesic_length >= 100.0);
  CHECK(p.branches()[0].geodesic_length <= 100.0 + kRoot2);
}

TEST_CASE("prune keeps graphs without short spurs") {
  const SkeletonGraph g = build_graph(tee(30, 30, 40));
  CHECK(prune(g) == g);

  BinaryMask line(80, 3);
  for (int c = 1; c < 79; ++c) line.set(1, c, true);
  const SkeletonGraph lg = build_graph(line);
  CHECK(prune(lg, {10.0, 1000.0}) == lg);
}

TEST_CASE("prune never empties a short star") {
  const SkeletonGraph g = build_graph(tee(3, 3, 3));
  const SkeletonGraph p = prune(g, {0.5, 100.0});
  CHECK(p.branches().size() == 1);
  CHECK_FALSE(p.mask().empty());
  CHECK_THROWS_AS(prune(g, {-0.1, 5.0}), ConfigError);
}

TEST_CASE("prune is idempotent and respects its threshold") {
  gen::Rng rng(24);
  for (int i = 0; i < 40; ++i) {
    const BinaryMask blob = gen::blob(rng, gen::uniform(rng, 100, 900), 48);
    const SkeletonGraph g = build_graph(thin(blob));
    const SkeletonGraph p = prune(g);
    CHECK(prune(p) == p);
    CHECK_FALSE(p.mask().empty());
    const double threshold = prune_threshold(p, {});
    if (p.branches().size() > 1) {
      for (const auto& b : p.branches()) {
        const auto ka = p.nodes()[b.a].kind, kb = p.nodes()[b.b].kind;
        const bool spur = (ka == PointKind::Endpoint && kb == PointKind::Fork) ||
                          (ka == PointKind::Fork && kb == PointKind::Endpoint);
        if (spur) CHECK(b.geodesic_length >= threshold);
      }
    }
  }
}
