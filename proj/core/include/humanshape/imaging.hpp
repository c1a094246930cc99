#pragma once

#include <optional>
#include <span>
#include <vector>

#include "humanshape/image.hpp"

namespace humanshape {

// Pearson correlation coefficient of two equally sized intensity grids:
//
//   r = sum((A - mean A)(B - mean B)) / sqrt(sum((A - mean A)^2) sum((B - mean B)^2))
//
// Throws DimensionMismatch when sizes differ and DegenerateImage when either
// input has zero variance (r undefined).
double correlation(const GrayImage& a, const GrayImage& b);
double correlation(std::span<const double> a, std::span<const double> b);

// True when the frame departs from the background: r < r_threshold, or r is
// undefined and the two images differ somewhere. r_threshold must lie in (-1, 1].
bool change_detected(const GrayImage& background, const GrayImage& frame,
                     double r_threshold = 0.95);

// DIFF image: foreground where |frame - background| > intensity_tolerance.
// A tolerance of 0 marks every nonzero difference.
BinaryMask diff_mask(const GrayImage& background, const GrayImage& frame,
                     int intensity_tolerance = 25);

// Square structuring element morphology; radius 0 is the identity. Pixels
// outside the raster do not take part in the min/max.
BinaryMask erode(const BinaryMask& mask, int radius);
BinaryMask dilate(const BinaryMask& mask, int radius);
BinaryMask open(const BinaryMask& mask, int radius);
BinaryMask close(const BinaryMask& mask, int radius);

// Opening followed by closing.
BinaryMask clean_mask(const BinaryMask& mask, int open_radius = 1, int close_radius = 2);

struct BoundingBox {
  int min_row = 0;
  int min_col = 0;
  int max_row = 0;
  int max_col = 0;

  int height() const { return max_row - min_row + 1; }
  int width() const { return max_col - min_col + 1; }
  long long area() const { return static_cast<long long>(height()) * width(); }
  bool contains(Pixel p) const {
    return p.row >= min_row && p.row <= max_row && p.col >= min_col && p.col <= max_col;
  }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct Centroid {
  double row = 0.0;
  double col = 0.0;
};

struct ComponentStats {
  int label = 0;  // 1-based, assigned in raster discovery order
  std::size_t area = 0;
  BoundingBox bbox;
  Centroid centroid;
};

// 8-connected labelling. labels[i] is 0 for background.
struct Labelling {
  std::vector<int> labels;
  std::vector<ComponentStats> components;  // indexed by label - 1
};

Labelling label_components(const BinaryMask& mask);

// Components sorted by area descending (ties: lower label first).
std::vector<ComponentStats> connected_components(const BinaryMask& mask);

struct ExtractedObject {
  BinaryMask mask;
  ComponentStats stats;
  std::vector<ComponentStats> others;  // remaining components, area descending
};

std::optional<ExtractedObject> extract_largest(const BinaryMask& mask, std::size_t min_area);

// Mask of the largest component, or nullopt if none reaches min_area.
std::optional<BinaryMask> largest_object(const BinaryMask& mask, std::size_t min_area);

}  // namespace humanshape
