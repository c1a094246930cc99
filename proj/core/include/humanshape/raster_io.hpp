#pragma once

#include <filesystem>
#include <iosfwd>

#include "humanshape/image.hpp"

namespace humanshape {

// Luma weights used for every colour-to-gray conversion.
inline constexpr double kLumaRed = 0.299;
inline constexpr double kLumaGreen = 0.587;
inline constexpr double kLumaBlue = 0.114;

std::uint8_t luma(std::uint8_t red, std::uint8_t green, std::uint8_t blue);

// Portable anymap family: P1..P6 (bitmap, graymap, pixmap; ASCII or binary).
// Colour inputs are converted with luma(); maxval other than 255 is rescaled.
GrayImage read_pnm(std::istream& in);
GrayImage read_pnm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const GrayImage& image);  // binary P5
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

GrayImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const GrayImage& image);

// Dispatch on file content (PNG signature) or extension. Throws IoError.
GrayImage read_image(const std::filesystem::path& path);
// ".png" writes PNG, anything else binary PGM.
void write_image(const std::filesystem::path& path, const GrayImage& image);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace humanshape
