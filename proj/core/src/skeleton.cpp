#include "humanshape/skeleton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "humanshape/errors.hpp"

namespace humanshape {
namespace {

// Neighbourhood of p as n[0..7] = N, NE, E, SE, S, SW, W, NW.
std::array<int, 8> neighbourhood(const BinaryMask& m, int r, int c) {
  std::array<int, 8> n{};
  for (int k = 0; k < 8; ++k) n[k] = m.get(r + kNeighbourRow[k], c + kNeighbourCol[k]) ? 1 : 0;
  return n;
}

int neighbour_count(const std::array<int, 8>& n) {
  int b = 0;
  for (int v : n) b += v;
  return b;
}

// Number of 0->1 transitions walking N, NE, ..., NW, N.
int transitions(const std::array<int, 8>& n) {
  int a = 0;
  for (int k = 0; k < 8; ++k) a += (n[k] == 0 && n[(k + 1) % 8] == 1) ? 1 : 0;
  return a;
}

// Yokoi connectivity number for 8-connected foreground. A pixel is simple
// (deletable without changing topology) iff this is 1.
int yokoi8(const std::array<int, 8>& n) {
  // Counter-clockwise from east: E, NE, N, NW, W, SW, S, SE.
  const int x[9] = {1 - n[2], 1 - n[1], 1 - n[0], 1 - n[7], 1 - n[6],
                    1 - n[5], 1 - n[4], 1 - n[3], 1 - n[2]};
  int sum = 0;
  for (int k = 0; k < 8; k += 2) sum += x[k] - x[k] * x[k + 1] * x[k + 2];
  return sum;
}

bool deletable(const BinaryMask& m, int r, int c) {
  const auto n = neighbourhood(m, r, c);
  return neighbour_count(n) >= 2 && yokoi8(n) == 1;
}

// Sequential raster sweeps deleting simple non-end pixels until stable.
void strip_redundant(BinaryMask& m) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < m.height(); ++r) {
      for (int c = 0; c < m.width(); ++c) {
        if (m.at(r, c) && deletable(m, r, c)) {
          m.set(r, c, false);
          changed = true;
        }
      }
    }
  }
}

// 8-connected groups among the set neighbours, using only ring pixels.
int ring_components(const std::array<int, 8>& n) {
  int parent[8];
  for (int k = 0; k < 8; ++k) parent[k] = k;
  auto find = [&](int k) {
    while (parent[k] != k) k = parent[k];
    return k;
  };
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      if (!n[i] || !n[j]) continue;
      const Pixel a{kNeighbourRow[i], kNeighbourCol[i]};
      const Pixel b{kNeighbourRow[j], kNeighbourCol[j]};
      if (adjacent8(a, b)) parent[find(i)] = find(j);
    }
  }
  int groups = 0;
  for (int k = 0; k < 8; ++k) groups += (n[k] && find(k) == k) ? 1 : 0;
  return groups;
}

// Pixels that lose their link to `anchor` once p is removed (p excluded).
std::vector<Pixel> cut_off_by(const BinaryMask& m, Pixel p, Pixel anchor) {
  auto flood = [&](std::vector<char>& seen, Pixel start, std::vector<Pixel>* out) {
    std::deque<Pixel> queue{start};
    seen[m.index(start)] = 1;
    while (!queue.empty()) {
      const Pixel q = queue.front();
      queue.pop_front();
      if (out) out->push_back(q);
      for (int k = 0; k < 8; ++k) {
        const Pixel n{q.row + kNeighbourRow[k], q.col + kNeighbourCol[k]};
        if (!m.get(n.row, n.col) || seen[m.index(n)]) continue;
        seen[m.index(n)] = 1;
        queue.push_back(n);
      }
    }
  };
  std::vector<char> seen(m.size(), 0);
  seen[m.index(p)] = 1;
  flood(seen, anchor, nullptr);
  std::vector<Pixel> lost;
  for (int k = 0; k < 8; ++k) {
    const Pixel q{p.row + kNeighbourRow[k], p.col + kNeighbourCol[k]};
    if (m.get(q.row, q.col) && !seen[m.index(q)]) flood(seen, q, &lost);
  }
  return lost;
}

// Thinning keeps holes, so a block wedged between one-pixel holes survives it.
// Holes are not part of the contract; components are. Open such blocks by
// deleting a block pixel whose neighbours stay connected around it.
bool break_blocks(BinaryMask& m) {
  bool any = false;
  for (int r = 0; r + 1 < m.height(); ++r) {
    for (int c = 0; c + 1 < m.width(); ++c) {
      if (!(m.at(r, c) && m.at(r, c + 1) && m.at(r + 1, c) && m.at(r + 1, c + 1))) continue;
      const Pixel corners[4] = {{r, c}, {r, c + 1}, {r + 1, c}, {r + 1, c + 1}};
      bool done = false;
      for (const Pixel p : corners) {
        if (ring_components(neighbourhood(m, p.row, p.col)) == 1) {
          m.set(p, false);
          done = true;
          break;
        }
      }
      // Four branches meeting only in the block. Drop the corner that strands
      // the least, together with what it strands; with loops that is nothing.
      if (!done) {
        std::size_t best = 0;
        std::vector<Pixel> best_lost;
        for (std::size_t k = 0; k < 4; ++k) {
          auto lost = cut_off_by(m, corners[k], corners[(k + 3) % 4]);
          if (k == 0 || lost.size() < best_lost.size()) {
            best = k;
            best_lost = std::move(lost);
          }
        }
        m.set(corners[best], false);
        for (const Pixel q : best_lost) m.set(q, false);
        done = true;
      }
      any = any || done;
    }
  }
  return any;
}

void require_thin_nonempty(const BinaryMask& skeleton) {
  if (skeleton.empty()) throw EmptyMask("skeleton has no foreground pixels");
  if (has_square_block(skeleton)) throw NotThin("skeleton contains a 2x2 foreground block");
}

int degree_at(const BinaryMask& m, Pixel p) {
  return neighbour_count(neighbourhood(m, p.row, p.col));
}

PointKind kind_for_degree(int degree) {
  if (degree <= 1) return PointKind::Endpoint;
  if (degree == 2) return PointKind::Regular;
  return PointKind::Fork;
}

}  // namespace

double step_cost(Pixel a, Pixel b, StepMetric metric) {
  if (metric == StepMetric::Unit) return 1.0;
  return (a.row != b.row && a.col != b.col) ? std::numbers::sqrt2 : 1.0;
}

double path_length(std::span<const Pixel> path, StepMetric metric) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += step_cost(path[i - 1], path[i], metric);
  return total;
}

bool SkeletonNode::contains(Pixel p) const {
  return std::binary_search(pixels.begin(), pixels.end(), p);
}

std::optional<std::size_t> SkeletonGraph::node_containing(Pixel p) const {
  if (!mask_.contains(p)) return std::nullopt;
  const int idx = node_index_[mask_.index(p)];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

std::vector<std::size_t> SkeletonGraph::nodes_of_kind(PointKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == kind) out.push_back(i);
  }
  return out;
}

const char* to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Endpoint: return "endpoint";
    case PointKind::Regular: return "regular";
    case PointKind::Fork: return "fork";
  }
  return "unknown";
}

bool has_square_block(const BinaryMask& mask) {
  for (int r = 0; r + 1 < mask.height(); ++r) {
    for (int c = 0; c + 1 < mask.width(); ++c) {
      if (mask.at(r, c) && mask.at(r, c + 1) && mask.at(r + 1, c) && mask.at(r + 1, c + 1)) {
        return true;
      }
    }
  }
  return false;
}

BinaryMask thin(const BinaryMask& mask) {
  if (mask.empty()) throw EmptyMask("nothing to thin");
  BinaryMask m = mask;
  std::vector<Pixel> marked;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int sub = 0; sub < 2; ++sub) {
      marked.clear();
      for (int r = 0; r < m.height(); ++r) {
        for (int c = 0; c < m.width(); ++c) {
          if (!m.at(r, c)) continue;
          const auto n = neighbourhood(m, r, c);
          const int b = neighbour_count(n);
          if (b < 2 || b > 6 || transitions(n) != 1) continue;
          // n: 0=N(P2) 2=E(P4) 4=S(P6) 6=W(P8)
          const bool directional =
              sub == 0 ? (n[0] * n[2] * n[4] == 0 && n[2] * n[4] * n[6] == 0)
                       : (n[0] * n[2] * n[6] == 0 && n[0] * n[4] * n[6] == 0);
          if (directional) marked.push_back({r, c});
        }
      }
      // Marked pixels are re-tested for simplicity on the live image. End
      // points were excluded at marking time; a pixel that only became an end
      // during this sweep may still go, as the parallel scheme would allow.
      // A pixel refused early may become simple once a later one goes, so the
      // list is swept until nothing more can be removed.
      bool progress = true;
      while (progress) {
        progress = false;
        for (const Pixel p : marked) {
          if (m.at(p) && yokoi8(neighbourhood(m, p.row, p.col)) == 1) {
            m.set(p, false);
            progress = true;
            changed = true;
          }
        }
      }
    }
  }
  strip_redundant(m);
  while (break_blocks(m)) strip_redundant(m);
  return m;
}

std::vector<SkeletonPoint> classify_points(const BinaryMask& skeleton) {
  if (has_square_block(skeleton)) throw NotThin("skeleton contains a 2x2 foreground block");
  std::vector<SkeletonPoint> out;
  for (const Pixel p : skeleton.foreground_pixels()) {
    const int d = degree_at(skeleton, p);
    out.push_back({p, d, kind_for_degree(d)});
  }
  return out;
}

SkeletonGraph build_graph(const BinaryMask& skeleton, StepMetric metric) {
  require_thin_nonempty(skeleton);
  SkeletonGraph g(skeleton);
  g.metric_ = metric;
  g.points_ = classify_points(skeleton);

  const BinaryMask& m = g.mask_;
  std::vector<PointKind> kind(m.size(), PointKind::Regular);
  for (const auto& pt : g.points_) kind[m.index(pt.position)] = pt.kind;

  // Terminal nodes: endpoints and merged fork clusters.
  std::vector<SkeletonNode> nodes;
  std::vector<std::uint8_t> seen(m.size(), 0);
  for (const auto& pt : g.points_) {
    const std::size_t idx = m.index(pt.position);
    if (pt.kind == PointKind::Endpoint) {
      nodes.push_back({pt.position, PointKind::Endpoint, {pt.position}});
      continue;
    }
    if (pt.kind != PointKind::Fork || seen[idx]) continue;

    std::vector<Pixel> cluster;
    std::vector<std::size_t> stack{idx};
    seen[idx] = 1;
    while (!stack.empty()) {
      const Pixel p = m.pixel(stack.back());
      stack.pop_back();
      cluster.push_back(p);
      for (int k = 0; k < 8; ++k) {
        const int r = p.row + kNeighbourRow[k];
        const int c = p.col + kNeighbourCol[k];
        if (!m.get(r, c)) continue;
        const std::size_t n = m.index(r, c);
        if (seen[n] || kind[n] != PointKind::Fork) continue;
        seen[n] = 1;
        stack.push_back(n);
      }
    }
    std::sort(cluster.begin(), cluster.end());
    double mean_r = 0.0;
    double mean_c = 0.0;
    for (const Pixel p : cluster) {
      mean_r += p.row;
      mean_c += p.col;
    }
    mean_r /= static_cast<double>(cluster.size());
    mean_c /= static_cast<double>(cluster.size());
    Pixel rep = cluster.front();
    double best = std::numeric_limits<double>::infinity();
    for (const Pixel p : cluster) {
      const double d = (p.row - mean_r) * (p.row - mean_r) + (p.col - mean_c) * (p.col - mean_c);
      if (d < best - 1e-12) {
        best = d;
        rep = p;
      }
    }
    nodes.push_back({rep, PointKind::Fork, std::move(cluster)});
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const SkeletonNode& x, const SkeletonNode& y) { return x.position < y.position; });

  g.node_index_.assign(m.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const Pixel p : nodes[i].pixels) g.node_index_[m.index(p)] = static_cast<int>(i);
  }
  g.nodes_ = std::move(nodes);

  // Hop-shortest route between two pixels of one node.
  auto route_within = [&](std::size_t node, Pixel from, Pixel to) {
    std::vector<Pixel> route;
    if (from == to) {
      route.push_back(from);
      return route;
    }
    const auto& px = g.nodes_[node].pixels;
    std::vector<int> parent(px.size(), -1);
    auto pos = [&](Pixel p) {
      return static_cast<std::size_t>(std::lower_bound(px.begin(), px.end(), p) - px.begin());
    };
    const std::size_t s = pos(from);
    const std::size_t t = pos(to);
    std::deque<std::size_t> queue{s};
    parent[s] = static_cast<int>(s);
    while (!queue.empty() && parent[t] < 0) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < px.size(); ++v) {
        if (parent[v] >= 0 || !adjacent8(px[u], px[v])) continue;
        parent[v] = static_cast<int>(u);
        queue.push_back(v);
      }
    }
    for (std::size_t v = t;; v = static_cast<std::size_t>(parent[v])) {
      route.push_back(px[v]);
      if (v == s) break;
    }
    std::reverse(route.begin(), route.end());
    return route;
  };

  auto node_at = [&](Pixel p) { return g.node_index_[m.index(p)]; };

  std::vector<std::uint8_t> interior_done(m.size(), 0);
  std::set<std::pair<std::size_t, std::size_t>> direct_done;

  auto add_branch = [&](std::size_t a, std::size_t b, std::vector<Pixel> path) {
    Branch br;
    br.a = a;
    br.b = b;
    br.geodesic_length = path_length(path, metric);
    br.path = std::move(path);
    g.branches_.push_back(std::move(br));
  };

  for (std::size_t n = 0; n < g.nodes_.size(); ++n) {
    const SkeletonNode& node = g.nodes_[n];
    if (node.kind == PointKind::Endpoint && degree_at(m, node.position) == 0) {
      add_branch(n, n, {node.position});
      continue;
    }
    for (const Pixel q : node.pixels) {
      for (int k = 0; k < 8; ++k) {
        const Pixel r{q.row + kNeighbourRow[k], q.col + kNeighbourCol[k]};
        if (!m.get(r.row, r.col)) continue;
        const int rn = node_at(r);
        if (rn == static_cast<int>(n)) continue;

        if (rn >= 0) {
          const std::size_t iq = m.index(q);
          const std::size_t ir = m.index(r);
          const std::pair<std::size_t, std::size_t> key{std::min(iq, ir), std::max(iq, ir)};
          if (!direct_done.insert(key).second) continue;
          std::vector<Pixel> path = route_within(n, node.position, q);
          const auto tail = route_within(static_cast<std::size_t>(rn), r,
                                         g.nodes_[static_cast<std::size_t>(rn)].position);
          path.insert(path.end(), tail.begin(), tail.end());
          add_branch(n, static_cast<std::size_t>(rn), std::move(path));
          continue;
        }

        if (interior_done[m.index(r)]) continue;
        std::vector<Pixel> path = route_within(n, node.position, q);
        Pixel prev = q;
        Pixel cur = r;
        int end_node = -1;
        Pixel end_pixel{};
        while (true) {
          interior_done[m.index(cur)] = 1;
          path.push_back(cur);
          std::optional<Pixel> next;
          for (int j = 0; j < 8; ++j) {
            const Pixel s{cur.row + kNeighbourRow[j], cur.col + kNeighbourCol[j]};
            if (!m.get(s.row, s.col) || s == prev) continue;
            next = s;
            break;
          }
          if (!next) break;  // unreachable for a regular pixel; defensive exit
          if (node_at(*next) >= 0) {
            end_node = node_at(*next);
            end_pixel = *next;
            break;
          }
          prev = cur;
          cur = *next;
        }
        if (end_node < 0) continue;
        const auto tail = route_within(static_cast<std::size_t>(end_node), end_pixel,
                                       g.nodes_[static_cast<std::size_t>(end_node)].position);
        path.insert(path.end(), tail.begin(), tail.end());
        add_branch(n, static_cast<std::size_t>(end_node), std::move(path));
      }
    }
  }

  // Remaining regular pixels form terminal-free cycles.
  for (const auto& pt : g.points_) {
    const std::size_t idx = m.index(pt.position);
    if (pt.kind != PointKind::Regular || interior_done[idx]) continue;
    const std::size_t anchor = g.nodes_.size();
    g.nodes_.push_back({pt.position, PointKind::Regular, {pt.position}});
    g.node_index_[idx] = static_cast<int>(anchor);

    std::vector<Pixel> path{pt.position};
    interior_done[idx] = 1;
    Pixel prev = pt.position;
    Pixel cur = pt.position;
    for (int j = 0; j < 8; ++j) {
      const Pixel s{cur.row + kNeighbourRow[j], cur.col + kNeighbourCol[j]};
      if (m.get(s.row, s.col)) {
        cur = s;
        break;
      }
    }
    while (cur != pt.position) {
      interior_done[m.index(cur)] = 1;
      path.push_back(cur);
      Pixel next = pt.position;
      for (int j = 0; j < 8; ++j) {
        const Pixel s{cur.row + kNeighbourRow[j], cur.col + kNeighbourCol[j]};
        if (m.get(s.row, s.col) && s != prev) {
          next = s;
          break;
        }
      }
      prev = cur;
      cur = next;
    }
    path.push_back(pt.position);
    add_branch(anchor, anchor, std::move(path));
  }

  g.adjacency_.assign(g.nodes_.size(), {});
  for (std::size_t i = 0; i < g.branches_.size(); ++i) {
    g.adjacency_[g.branches_[i].a].push_back(i);
    g.adjacency_[g.branches_[i].b].push_back(i);
  }
  return g;
}

double longest_endpoint_geodesic(const SkeletonGraph& graph) {
  const auto endpoints = graph.nodes_of_kind(PointKind::Endpoint);
  if (endpoints.size() < 2) return 0.0;
  const auto nodes = graph.nodes();
  const auto branches = graph.branches();
  const auto adjacency = graph.adjacency();

  double longest = 0.0;
  std::vector<double> dist(nodes.size());
  using Item = std::pair<double, std::size_t>;
  for (const std::size_t source : endpoints) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const std::size_t bi : adjacency[u]) {
        const Branch& br = branches[bi];
        const std::size_t v = br.a == u ? br.b : br.a;
        const double nd = d + br.geodesic_length;
        if (nd < dist[v]) {
          dist[v] = nd;
          heap.push({nd, v});
        }
      }
    }
    for (const std::size_t target : endpoints) {
      if (std::isfinite(dist[target])) longest = std::max(longest, dist[target]);
    }
  }
  return longest;
}

double prune_threshold(const SkeletonGraph& graph, const PruneParams& params) {
  return std::max(params.absolute_threshold,
                  params.relative_threshold * longest_endpoint_geodesic(graph));
}

SkeletonGraph prune(const SkeletonGraph& graph, const PruneParams& params) {
  if (params.relative_threshold < 0.0 || params.absolute_threshold < 0.0) {
    throw ConfigError("prune thresholds must be >= 0");
  }
  SkeletonGraph current = graph;
  while (current.branches().size() > 1) {
    const double threshold = prune_threshold(current, params);
    const auto nodes = current.nodes();
    std::vector<std::size_t> victims;
    for (std::size_t i = 0; i < current.branches().size(); ++i) {
      const Branch& br = current.branches()[i];
      const PointKind ka = nodes[br.a].kind;
      const PointKind kb = nodes[br.b].kind;
      const bool spur = (ka == PointKind::Endpoint && kb == PointKind::Fork) ||
                        (ka == PointKind::Fork && kb == PointKind::Endpoint);
      if (spur && br.geodesic_length < threshold) victims.push_back(i);
    }
    if (victims.empty()) break;
    // keep the longest if everything would go
    if (victims.size() == current.branches().size()) {
      auto keep = std::max_element(victims.begin(), victims.end(), [&](std::size_t x, std::size_t y) {
        return current.branches()[x].geodesic_length < current.branches()[y].geodesic_length;
      });
      victims.erase(keep);
    }

    BinaryMask mask = current.mask();
    for (const std::size_t v : victims) {
      for (const Pixel p : current.branches()[v].path) {
        const auto owner = current.node_containing(p);
        if (!owner || nodes[*owner].kind == PointKind::Endpoint) mask.set(p, false);
      }
    }
    strip_redundant(mask);
    current = build_graph(mask, current.metric());
  }
  return current;
}

}  // namespace humanshape
