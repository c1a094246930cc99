#include "humanshape/features.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

#include "humanshape/errors.hpp"

namespace humanshape {

ExtremalPoints extremal_points(const SkeletonGraph& graph) {
  const auto endpoints = graph.nodes_of_kind(PointKind::Endpoint);
  if (endpoints.size() < 2) {
    throw TooFewEndpoints("skeleton has " + std::to_string(endpoints.size()) + " endpoint(s)");
  }
  const auto nodes = graph.nodes();
  ExtremalPoints e;
  e.top = e.bottom = e.left = e.right = nodes[endpoints.front()].position;
  for (const std::size_t i : endpoints) {
    const Pixel p = nodes[i].position;
    if (std::tie(p.row, p.col) < std::tie(e.top.row, e.top.col)) e.top = p;
    if (std::make_tuple(-p.row, p.col) < std::make_tuple(-e.bottom.row, e.bottom.col)) e.bottom = p;
    if (std::tie(p.col, p.row) < std::tie(e.left.col, e.left.row)) e.left = p;
    if (std::make_tuple(-p.col, p.row) < std::make_tuple(-e.right.col, e.right.row)) e.right = p;
  }
  return e;
}

Posture posture_ratio(const ExtremalPoints& extremal) {
  Posture p;
  p.vertical = static_cast<double>(extremal.bottom.row - extremal.top.row);
  p.horizontal = static_cast<double>(extremal.right.col - extremal.left.col);
  p.ratio = p.horizontal == 0.0 ? kInfiniteRatio : p.vertical / p.horizontal;
  return p;
}

GeodesicPath shortest_path(const SkeletonGraph& graph, Pixel from, Pixel to) {
  const BinaryMask& m = graph.mask();
  if (!m.get(from.row, from.col) || !m.get(to.row, to.col)) {
    throw Unreachable("path terminals must lie on the skeleton");
  }
  constexpr double kTie = 1e-9;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(m.size(), inf);
  std::vector<std::size_t> parent(m.size(), m.size());
  std::vector<std::uint8_t> settled(m.size(), 0);

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const std::size_t source = m.index(from);
  const std::size_t target = m.index(to);
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == target) break;
    const Pixel p = m.pixel(u);
    for (int k = 0; k < 8; ++k) {
      const Pixel q{p.row + kNeighbourRow[k], p.col + kNeighbourCol[k]};
      if (!m.get(q.row, q.col)) continue;
      const std::size_t v = m.index(q);
      if (settled[v]) continue;
      const double nd = d + step_cost(p, q, graph.metric());
      if (nd < dist[v] - kTie) {
        dist[v] = nd;
        parent[v] = u;
        heap.push({nd, v});
      } else if (nd <= dist[v] + kTie && u < parent[v]) {
        parent[v] = u;
      }
    }
  }
  if (!settled[target]) throw Unreachable("terminals lie in different skeleton components");

  GeodesicPath out;
  for (std::size_t v = target;; v = parent[v]) {
    out.pixels.push_back(m.pixel(v));
    if (v == source) break;
  }
  std::reverse(out.pixels.begin(), out.pixels.end());
  out.cumulative.assign(out.pixels.size(), 0.0);
  for (std::size_t i = 1; i < out.pixels.size(); ++i) {
    out.cumulative[i] =
        out.cumulative[i - 1] + step_cost(out.pixels[i - 1], out.pixels[i], graph.metric());
  }
  out.length = out.cumulative.back();
  return out;
}

std::vector<ForkRatio> fork_ratios(const SkeletonGraph& graph, const GeodesicPath& path,
                                   std::vector<Pixel>* skipped) {
  std::vector<ForkRatio> out;
  if (path.pixels.empty()) return out;
  const auto nodes = graph.nodes();
  for (const std::size_t n : graph.nodes_of_kind(PointKind::Fork)) {
    const SkeletonNode& node = nodes[n];
    std::optional<std::size_t> first;
    std::size_t last = 0;
    for (std::size_t i = 0; i < path.pixels.size(); ++i) {
      if (!node.contains(path.pixels[i])) continue;
      if (!first) first = i;
      last = i;
    }
    if (!first) continue;
    const double shape1 = 0.5 * (path.cumulative[*first] + path.cumulative[last]);
    const double shape2 = path.length - shape1;
    if (*first == 0 || last + 1 == path.pixels.size() || shape1 <= 0.0 || shape2 <= 0.0) {
      if (skipped) skipped->push_back(node.position);
      continue;
    }
    out.push_back({node.position, shape1, shape2, shape2 / shape1});
  }
  std::sort(out.begin(), out.end(), [](const ForkRatio& a, const ForkRatio& b) {
    return std::tie(a.shape1, a.fork) < std::tie(b.shape1, b.fork);
  });
  return out;
}

void validate(const ShapeRange& range, const char* name) {
  if (!(range.lo > 0.0) || !(range.lo <= range.hi)) {
    throw ConfigError(std::string(name) + " range must satisfy 0 < lo <= hi");
  }
}

ShapeFlags shape_flags(std::span<const ForkRatio> ratios, ShapeRange neck, ShapeRange waist) {
  validate(neck, "neck");
  validate(waist, "waist");
  ShapeFlags flags;
  for (const auto& r : ratios) {
    if (neck.contains(r.shape)) flags.shapeneck = 1;
    if (waist.contains(r.shape)) flags.shapewaist = 1;
  }
  return flags;
}

ShapeFeatures compute_features(const SkeletonGraph& graph, const FeatureParams& params) {
  ShapeFeatures f;
  f.extremal = extremal_points(graph);
  f.posture = posture_ratio(f.extremal);
  f.spine = shortest_path(graph, f.extremal.top, f.extremal.bottom);
  f.fork_ratios = fork_ratios(graph, f.spine, &f.skipped_forks);
  f.flags = shape_flags(f.fork_ratios, params.neck, params.waist);
  return f;
}

}  // namespace humanshape
