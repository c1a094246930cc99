#include "humanshape/image.hpp"

#include <algorithm>
#include <string>

#include "humanshape/errors.hpp"

namespace humanshape {
namespace {

void check_dimensions(int width, int height, std::size_t length) {
  if (width < 1 || height < 1) {
    throw DimensionMismatch("image dimensions must be positive, got " +
                            std::to_string(width) + "x" + std::to_string(height));
  }
  if (length != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionMismatch("buffer length " + std::to_string(length) +
                            " does not match " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dimensions(width, height, static_cast<std::size_t>(std::max(width, 0)) *
                                      static_cast<std::size_t>(std::max(height, 0)));
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height, data_.size());
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  check_dimensions(width, height, static_cast<std::size_t>(std::max(width, 0)) *
                                      static_cast<std::size_t>(std::max(height, 0)));
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  check_dimensions(width, height, bits_.size());
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BinaryMask::foreground_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<Pixel> BinaryMask::foreground_pixels() const {
  std::vector<Pixel> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(pixel(i));
  }
  return out;
}

GrayImage to_gray(const BinaryMask& mask) {
  std::vector<std::uint8_t> data(mask.size());
  auto bits = mask.bits();
  std::transform(bits.begin(), bits.end(), data.begin(),
                 [](std::uint8_t b) { return b ? std::uint8_t{255} : std::uint8_t{0}; });
  return GrayImage(mask.width(), mask.height(), std::move(data));
}

BinaryMask to_mask(const GrayImage& image) {
  std::vector<std::uint8_t> bits(image.size());
  auto data = image.data();
  std::transform(data.begin(), data.end(), bits.begin(),
                 [](std::uint8_t v) { return v ? std::uint8_t{1} : std::uint8_t{0}; });
  return BinaryMask(image.width(), image.height(), std::move(bits));
}

}  // namespace humanshape
