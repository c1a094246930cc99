#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "humanshape/image.hpp"

namespace humanshape {

enum class PointKind { Endpoint, Regular, Fork };

// Cost of one step between 8-adjacent pixels. Geodesic counts diagonal steps
// as sqrt(2); Unit counts every step as 1 (sensitivity checks only).
enum class StepMetric { Geodesic, Unit };

double step_cost(Pixel a, Pixel b, StepMetric metric);
double path_length(std::span<const Pixel> path, StepMetric metric);

struct SkeletonPoint {
  Pixel position;
  int degree = 0;  // 8-adjacent skeleton pixels
  PointKind kind = PointKind::Regular;

  friend bool operator==(const SkeletonPoint&, const SkeletonPoint&) = default;
};

// A branch terminal. Adjacent fork pixels are merged into one node whose
// position is the cluster pixel closest to the cluster centroid. Isolated
// cycles get a Regular anchor node.
struct SkeletonNode {
  Pixel position;
  PointKind kind = PointKind::Endpoint;
  std::vector<Pixel> pixels;  // sorted; contains position

  bool contains(Pixel p) const;
  friend bool operator==(const SkeletonNode&, const SkeletonNode&) = default;
};

struct Branch {
  std::size_t a = 0;  // node index
  std::size_t b = 0;  // node index; equal to a for self-loops
  std::vector<Pixel> path;  // nodes[a].position ... nodes[b].position
  double geodesic_length = 0.0;

  bool is_loop() const { return a == b; }
  friend bool operator==(const Branch&, const Branch&) = default;
};

class SkeletonGraph {
 public:
  const BinaryMask& mask() const { return mask_; }
  StepMetric metric() const { return metric_; }
  std::span<const SkeletonPoint> points() const { return points_; }
  std::span<const SkeletonNode> nodes() const { return nodes_; }
  std::span<const Branch> branches() const { return branches_; }
  // Branch indices incident to each node; a self-loop is listed twice.
  std::span<const std::vector<std::size_t>> adjacency() const { return adjacency_; }

  std::optional<std::size_t> node_containing(Pixel p) const;
  std::vector<std::size_t> nodes_of_kind(PointKind kind) const;
  std::size_t count_of_kind(PointKind kind) const { return nodes_of_kind(kind).size(); }

  friend bool operator==(const SkeletonGraph& x, const SkeletonGraph& y) {
    return x.mask_ == y.mask_ && x.metric_ == y.metric_ && x.nodes_ == y.nodes_ &&
           x.branches_ == y.branches_;
  }

 private:
  friend SkeletonGraph build_graph(const BinaryMask&, StepMetric);

  explicit SkeletonGraph(BinaryMask mask) : mask_(std::move(mask)) {}

  BinaryMask mask_;
  StepMetric metric_ = StepMetric::Geodesic;
  std::vector<SkeletonPoint> points_;
  std::vector<SkeletonNode> nodes_;
  std::vector<Branch> branches_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> node_index_;  // per pixel, -1 when not a node pixel
};

// True when some 2x2 window is entirely foreground.
bool has_square_block(const BinaryMask& mask);

// Two-subiteration thinning. Each subiteration marks border pixels with the
// classical neighbourhood tests (2 <= B <= 6, one 0->1 transition, and the
// directional products), then deletes the marked pixels that are still
// 8-simple on the live image, sweeping the list until nothing more goes.
// A raster pass then strips simple non-end pixels so lines are minimally
// 8-connected, and any 2x2 block left beside one-pixel holes is opened.
// Component count is preserved; holes may merge. Throws EmptyMask.
BinaryMask thin(const BinaryMask& mask);

// Degree-based labelling: degree <= 1 is Endpoint (an isolated pixel counts as
// an endpoint of a zero-length branch), 2 is Regular, >= 3 is Fork.
// Throws NotThin when a 2x2 foreground block exists.
std::vector<SkeletonPoint> classify_points(const BinaryMask& skeleton);

// Throws EmptyMask, NotThin.
SkeletonGraph build_graph(const BinaryMask& skeleton,
                          StepMetric metric = StepMetric::Geodesic);

struct PruneParams {
  double relative_threshold = 0.06;
  double absolute_threshold = 5.0;
};

// Longest shortest-path distance between any two endpoints (0 with fewer
// than two endpoints).
double longest_endpoint_geodesic(const SkeletonGraph& graph);

// Threshold below which endpoint-to-fork branches are spurs for this graph.
double prune_threshold(const SkeletonGraph& graph, const PruneParams& params);

// Removes endpoint-to-fork branches shorter than prune_threshold. Each round
// drops every such spur at once (keeping the longest if all branches
// qualify), then rebuilds the graph so that forks left with two branches
// dissolve and the threshold is recomputed. Endpoint-to-endpoint branches are
// never removed, so the skeleton is never emptied. The result is a fixed point.
SkeletonGraph prune(const SkeletonGraph& graph, const PruneParams& params = {});

const char* to_string(PointKind kind);

}  // namespace humanshape
