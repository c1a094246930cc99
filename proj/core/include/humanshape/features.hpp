#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "humanshape/image.hpp"
#include "humanshape/skeleton.hpp"

namespace humanshape {

// Topmost, bottommost, leftmost and rightmost endpoints of a skeleton.
struct ExtremalPoints {
  Pixel top;
  Pixel bottom;
  Pixel left;
  Pixel right;
};

// Ties: T and B prefer the smaller column, L and R the smaller row.
// Throws TooFewEndpoints when the graph has fewer than two endpoints.
ExtremalPoints extremal_points(const SkeletonGraph& graph);

struct Posture {
  double vertical = 0.0;    // V = B.row - T.row
  double horizontal = 0.0;  // H = R.col - L.col
  double ratio = 0.0;       // V / H, +infinity when H == 0
};

inline constexpr double kInfiniteRatio = std::numeric_limits<double>::infinity();

Posture posture_ratio(const ExtremalPoints& extremal);

struct GeodesicPath {
  std::vector<Pixel> pixels;
  std::vector<double> cumulative;  // distance from pixels.front() at each index
  double length = 0.0;
};

// Dijkstra over the skeleton pixels (8-adjacency, costs from the graph's step
// metric). Among equal-length routes the lexicographically smaller
// predecessor wins. Throws Unreachable when the pixels are in different
// components or either one is not on the skeleton.
GeodesicPath shortest_path(const SkeletonGraph& graph, Pixel from, Pixel to);

struct ForkRatio {
  Pixel fork;
  double shape1 = 0.0;  // along the path from T to the fork
  double shape2 = 0.0;  // from the fork to B
  double shape = 0.0;   // shape2 / shape1
};

// Ratios for every fork node met by the path. A merged fork cluster is placed
// at the midpoint of its first and last path hits. Forks sitting on either
// path end are skipped and reported through `skipped`. Sorted by shape1.
std::vector<ForkRatio> fork_ratios(const SkeletonGraph& graph, const GeodesicPath& path,
                                   std::vector<Pixel>* skipped = nullptr);

struct ShapeRange {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
};

inline constexpr ShapeRange kNeckRange{5.0, 8.0};
inline constexpr ShapeRange kWaistRange{1.0, 2.0};

// Throws ConfigError unless 0 < lo <= hi.
void validate(const ShapeRange& range, const char* name);

struct ShapeFlags {
  int shapeneck = 0;
  int shapewaist = 0;
};

// A flag is set when any fork ratio falls inside the closed range.
ShapeFlags shape_flags(std::span<const ForkRatio> ratios, ShapeRange neck = kNeckRange,
                       ShapeRange waist = kWaistRange);

struct FeatureParams {
  ShapeRange neck = kNeckRange;
  ShapeRange waist = kWaistRange;
};

struct ShapeFeatures {
  ExtremalPoints extremal;
  Posture posture;
  GeodesicPath spine;  // shortest T -> B path
  std::vector<ForkRatio> fork_ratios;
  std::vector<Pixel> skipped_forks;
  ShapeFlags flags;
};

ShapeFeatures compute_features(const SkeletonGraph& graph, const FeatureParams& params = {});

}  // namespace humanshape
