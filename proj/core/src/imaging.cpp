#include "humanshape/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "humanshape/errors.hpp"

namespace humanshape {
namespace {

void require_same_size(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionMismatch(std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                            " vs " + std::to_string(b.width()) + "x" +
                            std::to_string(b.height()));
  }
}

// One-dimensional running min/max along rows (horizontal) or columns.
BinaryMask morph_pass(const BinaryMask& in, int radius, bool horizontal, bool is_dilation) {
  BinaryMask out(in.width(), in.height());
  const int w = in.width();
  const int h = in.height();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      bool value = !is_dilation;
      for (int k = -radius; k <= radius; ++k) {
        const int rr = horizontal ? r : r + k;
        const int cc = horizontal ? c + k : c;
        if (!in.contains(rr, cc)) continue;
        const bool v = in.at(rr, cc);
        if (is_dilation && v) {
          value = true;
          break;
        }
        if (!is_dilation && !v) {
          value = false;
          break;
        }
      }
      out.set(r, c, value);
    }
  }
  return out;
}

}  // namespace

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("sample counts differ: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
  if (a.empty()) throw DimensionMismatch("empty input");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;

  double cross = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cross += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw DegenerateImage("zero intensity variance; correlation undefined");
  }
  const double r = cross / std::sqrt(var_a * var_b);
  return std::clamp(r, -1.0, 1.0);
}

double correlation(const GrayImage& a, const GrayImage& b) {
  require_same_size(a, b);
  std::vector<double> va(a.data().begin(), a.data().end());
  std::vector<double> vb(b.data().begin(), b.data().end());
  return correlation(std::span<const double>(va), std::span<const double>(vb));
}

bool change_detected(const GrayImage& background, const GrayImage& frame, double r_threshold) {
  if (!(r_threshold > -1.0 && r_threshold <= 1.0)) {
    throw ConfigError("r_threshold must lie in (-1, 1], got " + std::to_string(r_threshold));
  }
  require_same_size(background, frame);
  try {
    return correlation(background, frame) < r_threshold;
  } catch (const DegenerateImage&) {
    return background != frame;
  }
}

BinaryMask diff_mask(const GrayImage& background, const GrayImage& frame,
                     int intensity_tolerance) {
  require_same_size(background, frame);
  if (intensity_tolerance < 0 || intensity_tolerance > 255) {
    throw ConfigError("intensity_tolerance must lie in [0, 255]");
  }
  std::vector<std::uint8_t> bits(background.size());
  auto bg = background.data();
  auto fr = frame.data();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = std::abs(int{fr[i]} - int{bg[i]}) > intensity_tolerance ? 1 : 0;
  }
  return BinaryMask(background.width(), background.height(), std::move(bits));
}

BinaryMask erode(const BinaryMask& mask, int radius) {
  if (radius < 0) throw ConfigError("structuring element radius must be >= 0");
  if (radius == 0) return mask;
  return morph_pass(morph_pass(mask, radius, true, false), radius, false, false);
}

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius < 0) throw ConfigError("structuring element radius must be >= 0");
  if (radius == 0) return mask;
  return morph_pass(morph_pass(mask, radius, true, true), radius, false, true);
}

BinaryMask open(const BinaryMask& mask, int radius) { return dilate(erode(mask, radius), radius); }

BinaryMask close(const BinaryMask& mask, int radius) { return erode(dilate(mask, radius), radius); }

BinaryMask clean_mask(const BinaryMask& mask, int open_radius, int close_radius) {
  return close(open(mask, open_radius), close_radius);
}

Labelling label_components(const BinaryMask& mask) {
  Labelling out;
  out.labels.assign(mask.size(), 0);
  std::vector<std::size_t> stack;
  int next_label = 0;

  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask.bits()[start] || out.labels[start] != 0) continue;
    ++next_label;
    ComponentStats stats;
    stats.label = next_label;
    const Pixel first = mask.pixel(start);
    stats.bbox = {first.row, first.col, first.row, first.col};
    double sum_row = 0.0;
    double sum_col = 0.0;

    out.labels[start] = next_label;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const Pixel p = mask.pixel(idx);
      ++stats.area;
      sum_row += p.row;
      sum_col += p.col;
      stats.bbox.min_row = std::min(stats.bbox.min_row, p.row);
      stats.bbox.max_row = std::max(stats.bbox.max_row, p.row);
      stats.bbox.min_col = std::min(stats.bbox.min_col, p.col);
      stats.bbox.max_col = std::max(stats.bbox.max_col, p.col);
      for (int k = 0; k < 8; ++k) {
        const int r = p.row + kNeighbourRow[k];
        const int c = p.col + kNeighbourCol[k];
        if (!mask.get(r, c)) continue;
        const std::size_t n = mask.index(r, c);
        if (out.labels[n] != 0) continue;
        out.labels[n] = next_label;
        stack.push_back(n);
      }
    }
    stats.centroid = {sum_row / static_cast<double>(stats.area),
                      sum_col / static_cast<double>(stats.area)};
    out.components.push_back(stats);
  }
  return out;
}

std::vector<ComponentStats> connected_components(const BinaryMask& mask) {
  auto comps = label_components(mask).components;
  std::stable_sort(comps.begin(), comps.end(),
                   [](const ComponentStats& a, const ComponentStats& b) { return a.area > b.area; });
  return comps;
}

std::optional<ExtractedObject> extract_largest(const BinaryMask& mask, std::size_t min_area) {
  if (min_area < 1) throw ConfigError("min_area must be >= 1");
  Labelling lab = label_components(mask);
  if (lab.components.empty()) return std::nullopt;
  std::stable_sort(lab.components.begin(), lab.components.end(),
                   [](const ComponentStats& a, const ComponentStats& b) { return a.area > b.area; });
  const ComponentStats& best = lab.components.front();
  if (best.area < min_area) return std::nullopt;

  BinaryMask object(mask.width(), mask.height());
  for (std::size_t i = 0; i < lab.labels.size(); ++i) {
    if (lab.labels[i] == best.label) object.set(object.pixel(i), true);
  }
  ExtractedObject out{std::move(object), best, {}};
  out.others.assign(lab.components.begin() + 1, lab.components.end());
  return out;
}

std::optional<BinaryMask> largest_object(const BinaryMask& mask, std::size_t min_area) {
  auto obj = extract_largest(mask, min_area);
  if (!obj) return std::nullopt;
  return std::move(obj->mask);
}

}  // namespace humanshape
