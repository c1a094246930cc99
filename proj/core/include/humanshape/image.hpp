#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace humanshape {

// Raster coordinate. Ordering is lexicographic (row, then col), which is the
// tie-break order used throughout the skeleton and path code.
struct Pixel {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const Pixel&, const Pixel&) = default;
};

constexpr bool adjacent8(Pixel a, Pixel b) {
  const int dr = a.row - b.row;
  const int dc = a.col - b.col;
  return (dr != 0 || dc != 0) && dr >= -1 && dr <= 1 && dc >= -1 && dc <= 1;
}

// Neighbour offsets in clockwise order starting north.
inline constexpr int kNeighbourRow[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
inline constexpr int kNeighbourCol[8] = {0, 1, 1, 1, 0, -1, -1, -1};

// 8-bit single channel image, row major.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  std::uint8_t at(int row, int col) const { return data_[index(row, col)]; }
  std::uint8_t& at(int row, int col) { return data_[index(row, col)]; }
  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < height_ && col < width_;
  }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

// Foreground/background grid. Bits are stored as bytes (0 or 1) so that rows
// can be handed out as spans.
class BinaryMask {
 public:
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int row, int col) const { return bits_[index(row, col)] != 0; }
  bool at(Pixel p) const { return at(p.row, p.col); }
  void set(int row, int col, bool value) { bits_[index(row, col)] = value ? 1 : 0; }
  void set(Pixel p, bool value) { set(p.row, p.col, value); }

  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < height_ && col < width_;
  }
  bool contains(Pixel p) const { return contains(p.row, p.col); }
  // Out-of-range reads are background.
  bool get(int row, int col) const { return contains(row, col) && at(row, col); }

  std::size_t foreground_count() const;
  std::vector<Pixel> foreground_pixels() const;
  bool empty() const { return foreground_count() == 0; }

  std::span<const std::uint8_t> bits() const { return bits_; }

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }
  std::size_t index(Pixel p) const { return index(p.row, p.col); }
  Pixel pixel(std::size_t index) const {
    return {static_cast<int>(index / static_cast<std::size_t>(width_)),
            static_cast<int>(index % static_cast<std::size_t>(width_))};
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

// Mask rendered as 0/255 gray values.
GrayImage to_gray(const BinaryMask& mask);
// Any nonzero sample is foreground.
BinaryMask to_mask(const GrayImage& image);

}  // namespace humanshape
