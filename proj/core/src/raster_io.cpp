#include "humanshape/raster_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <string>

#include "humanshape/errors.hpp"

namespace humanshape {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  while (ch != EOF && !std::isspace(ch) && ch != '#') {
    token.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  if (ch == '#') in.unget();
  if (token.empty()) throw IoError("truncated PNM header");
  return token;
}

int next_int(std::istream& in) {
  const std::string token = next_token(in);
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(token, &used);
    if (used != token.size()) throw IoError("bad PNM integer '" + token + "'");
  } catch (const std::logic_error&) {
    throw IoError("bad PNM integer '" + token + "'");
  }
  return value;
}

// Next bitmap digit in a P1 body; digits may be packed without whitespace.
int next_bit(std::istream& in) {
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (ch == '0' || ch == '1') {
      return ch - '0';
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  throw IoError("truncated or malformed P1 body");
}

std::uint8_t rescale(int value, int maxval) {
  if (value < 0 || value > maxval) throw IoError("PNM sample out of range");
  if (maxval == 255) return static_cast<std::uint8_t>(value);
  return static_cast<std::uint8_t>(std::lround(255.0 * value / maxval));
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

std::uint8_t luma(std::uint8_t red, std::uint8_t green, std::uint8_t blue) {
  const double y = kLumaRed * red + kLumaGreen * green + kLumaBlue * blue;
  return static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
}

GrayImage read_pnm(std::istream& in) {
  const std::string magic = next_token(in);
  if (magic.size() != 2 || magic[0] != 'P' || magic[1] < '1' || magic[1] > '6') {
    throw IoError("not a PNM file (magic '" + magic + "')");
  }
  const int kind = magic[1] - '0';
  const int width = next_int(in);
  const int height = next_int(in);
  if (width < 1 || height < 1) throw IoError("PNM dimensions must be positive");
  const int maxval = (kind == 1 || kind == 4) ? 1 : next_int(in);
  if (maxval < 1 || maxval > 65535) throw IoError("PNM maxval out of range");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> data(count);
  const bool colour = kind == 3 || kind == 6;
  const int channels = colour ? 3 : 1;

  if (kind == 1) {
    for (auto& v : data) v = next_bit(in) ? 0 : 255;  // 1 is black in PBM
  } else if (kind == 2 || kind == 3) {
    for (auto& v : data) {
      std::array<std::uint8_t, 3> s{};
      for (int ch = 0; ch < channels; ++ch) s[ch] = rescale(next_int(in), maxval);
      v = colour ? luma(s[0], s[1], s[2]) : s[0];
    }
  } else if (kind == 4) {
    const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
    std::vector<unsigned char> row(row_bytes);
    for (int r = 0; r < height; ++r) {
      if (!in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row_bytes))) {
        throw IoError("truncated P4 body");
      }
      for (int c = 0; c < width; ++c) {
        const bool black = (row[c / 8] >> (7 - c % 8)) & 1;
        data[static_cast<std::size_t>(r) * width + c] = black ? 0 : 255;
      }
    }
  } else {
    const int bytes = maxval > 255 ? 2 : 1;
    const std::size_t total = count * channels * bytes;
    std::vector<unsigned char> raw(total);
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(total))) {
      throw IoError("truncated binary PNM body");
    }
    std::size_t pos = 0;
    auto sample = [&]() {
      int v = raw[pos++];
      if (bytes == 2) v = (v << 8) | raw[pos++];
      return rescale(v, maxval);
    };
    for (auto& v : data) {
      if (colour) {
        const std::uint8_t red = sample();
        const std::uint8_t green = sample();
        const std::uint8_t blue = sample();
        v = luma(red, green, blue);
      } else {
        v = sample();
      }
    }
  }
  return GrayImage(width, height, std::move(data));
}

GrayImage read_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_pnm(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  auto data = image.data();
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_pgm(out, image);
  if (!out) throw IoError("write failed for " + path.string());
}

GrayImage read_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.string().c_str())) {
    throw IoError(path.string() + ": " + png.message);
  }
  const bool colour = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw IoError(path.string() + ": " + message);
  }
  const int width = static_cast<int>(png.width);
  const int height = static_cast<int>(png.height);
  if (!colour) return GrayImage(width, height, std::move(buffer));

  std::vector<std::uint8_t> gray(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = luma(buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]);
  }
  return GrayImage(width, height, std::move(gray));
}

void write_png(const std::filesystem::path& path, const GrayImage& image) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.string().c_str(), 0, image.data().data(), 0, nullptr)) {
    throw IoError(path.string() + ": " + png.message);
  }
}

GrayImage read_image(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.string().c_str(), "rb"));
  if (!f) throw IoError("cannot open " + path.string());
  unsigned char sig[8] = {};
  const std::size_t got = std::fread(sig, 1, sizeof sig, f.get());
  f.reset();
  if (got == sizeof sig && png_sig_cmp(sig, 0, sizeof sig) == 0) return read_png(path);
  return read_pnm(path);
}

void write_image(const std::filesystem::path& path, const GrayImage& image) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") {
    write_png(path, image);
  } else {
    write_pgm(path, image);
  }
}

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  write_image(path, to_gray(mask));
}

}  // namespace humanshape
