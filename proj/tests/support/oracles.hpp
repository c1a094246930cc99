#pragma once

// Independent reference implementations. Deliberately naive: direct formula
// evaluation, brute-force morphology and exhaustive path search.

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "humanshape/image.hpp"

namespace oracle {

// r = sum((A-Abar)(B-Bbar)) / sqrt(sum((A-Abar)^2) sum((B-Bbar)^2)) as a double loop.
inline double correlation(const humanshape::GrayImage& a, const humanshape::GrayImage& b) {
  const int m = a.height(), n = a.width();
  double sa = 0, sb = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      sa += a.at(i, j);
      sb += b.at(i, j);
    }
  const double abar = sa / (m * n), bbar = sb / (m * n);
  double num = 0, da = 0, db = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = a.at(i, j) - abar, y = b.at(i, j) - bbar;
      num += x * y;
      da += x * x;
      db += y * y;
    }
  return num / std::sqrt(da * db);
}

// Square structuring element, window clipped at the border.
inline humanshape::BinaryMask erode(const humanshape::BinaryMask& m, int r) {
  humanshape::BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      bool all = true;
      for (int dy = -r; dy <= r && all; ++dy)
        for (int dx = -r; dx <= r; ++dx)
          if (m.contains(y + dy, x + dx) && !m.at(y + dy, x + dx)) {
            all = false;
            break;
          }
      out.set(y, x, all);
    }
  return out;
}

inline humanshape::BinaryMask dilate(const humanshape::BinaryMask& m, int r) {
  humanshape::BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      bool any = false;
      for (int dy = -r; dy <= r && !any; ++dy)
        for (int dx = -r; dx <= r; ++dx)
          if (m.get(y + dy, x + dx)) {
            any = true;
            break;
          }
      out.set(y, x, any);
    }
  return out;
}

// Union-find count of 8-connected components.
inline int component_count(const humanshape::BinaryMask& m) {
  const int w = m.width(), h = m.height();
  std::vector<int> parent(static_cast<std::size_t>(w) * h);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!m.at(y, x)) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (m.get(y + dy, x + dx)) parent[find(y * w + x)] = find((y + dy) * w + x + dx);
    }
  int count = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (m.at(y, x) && find(y * w + x) == y * w + x) ++count;
  return count;
}

inline bool has_2x2(const humanshape::BinaryMask& m) {
  for (int y = 0; y + 1 < m.height(); ++y)
    for (int x = 0; x + 1 < m.width(); ++x)
      if (m.at(y, x) && m.at(y + 1, x) && m.at(y, x + 1) && m.at(y + 1, x + 1)) return true;
  return false;
}

// Minimum geodesic length over every simple path between two pixels of a
// small pixel set (8-adjacency, diagonal steps cost sqrt 2). Infinity when
// unreachable.
inline double min_simple_path(const humanshape::BinaryMask& m, humanshape::Pixel from,
                              humanshape::Pixel to, bool unit = false) {
  const auto pixels = m.foreground_pixels();
  std::vector<char> used(m.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(humanshape::Pixel, double)> walk = [&](humanshape::Pixel p, double cost) {
    if (p == to) {
      best = std::min(best, cost);
      return;
    }
    for (int k = 0; k < 8; ++k) {
      const humanshape::Pixel q{p.row + humanshape::kNeighbourRow[k],
                                p.col + humanshape::kNeighbourCol[k]};
      if (!m.get(q.row, q.col) || used[m.index(q)]) continue;
      const bool diag = q.row != p.row && q.col != p.col;
      used[m.index(q)] = 1;
      walk(q, cost + (diag && !unit ? std::sqrt(2.0) : 1.0));
      used[m.index(q)] = 0;
    }
  };
  used[m.index(from)] = 1;
  walk(from, 0.0);
  return best;
}

}  // namespace oracle

namespace oracle {

// Textbook parallel two-subiteration thinning (both subiterations delete all
// marked pixels at once). Used only as a reference for simple shapes.
inline humanshape::BinaryMask zhang_suen(humanshape::BinaryMask m) {
  auto p = [&](int r, int c) { return m.get(r, c) ? 1 : 0; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int sub = 0; sub < 2; ++sub) {
      std::vector<humanshape::Pixel> del;
      for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c) {
          if (!m.at(r, c)) continue;
          const int n[8] = {p(r - 1, c), p(r - 1, c + 1), p(r, c + 1), p(r + 1, c + 1),
                            p(r + 1, c), p(r + 1, c - 1), p(r, c - 1), p(r - 1, c - 1)};
          int b = 0, a = 0;
          for (int k = 0; k < 8; ++k) {
            b += n[k];
            if (!n[k] && n[(k + 1) % 8]) ++a;
          }
          if (b < 2 || b > 6 || a != 1) continue;
          const int north = n[0], east = n[2], south = n[4], west = n[6];
          if (sub == 0 && (north * east * south || east * south * west)) continue;
          if (sub == 1 && (north * east * west || north * south * west)) continue;
          del.push_back({r, c});
        }
      for (auto q : del) m.set(q, false);
      if (!del.empty()) changed = true;
    }
  }
  return m;
}

}  // namespace oracle
