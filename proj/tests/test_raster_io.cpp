#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "humanshape/errors.hpp"
#include "humanshape/raster_io.hpp"
#include "support/generators.hpp"

using namespace humanshape;

namespace {

GrayImage pnm(const std::string& text) {
  std::istringstream in(text);
  return read_pnm(in);
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("humanshape_io_" + name);
}

}  // namespace

TEST_CASE("luma") {
  CHECK(luma(255, 0, 0) == 76);
  CHECK(luma(0, 255, 0) == 150);
  CHECK(luma(0, 0, 255) == 29);
  CHECK(luma(10, 20, 30) == 18);
  CHECK(luma(255, 255, 255) == 255);
  CHECK(luma(0, 0, 0) == 0);
}

TEST_CASE("ascii anymaps") {
  const GrayImage bits = pnm("P1\n# comment\n3 2\n1 0 1\n0 1 0\n");
  CHECK(bits == GrayImage(3, 2, {0, 255, 0, 255, 0, 255}));
  CHECK(pnm("P1 3 2 101010") == GrayImage(3, 2, {0, 255, 0, 255, 0, 255}));

  CHECK(pnm("P2 2 2 255 0 10 200 255") == GrayImage(2, 2, {0, 10, 200, 255}));
  CHECK(pnm("P2 2 1 15 0 15") == GrayImage(2, 1, {0, 255}));
  CHECK(pnm("P2 1 1 1000 500") == GrayImage(1, 1, {128}));

  CHECK(pnm("P3 2 1 255 255 0 0 10 20 30") == GrayImage(2, 1, {76, 18}));
}

TEST_CASE("binary anymaps") {
  std::string p4 = "P4\n10 1\n";
  p4 += static_cast<char>(0b10100000);
  p4 += static_cast<char>(0b01000000);
  CHECK(pnm(p4) == GrayImage(10, 1, {0, 255, 0, 255, 255, 255, 255, 255, 255, 0}));

  std::string p5 = "P5 3 1 255\n";
  p5 += std::string{'\x00', '\x7f', '\xff'};
  CHECK(pnm(p5) == GrayImage(3, 1, {0, 127, 255}));

  std::string p5wide = "P5 1 1 65535\n";
  p5wide += std::string{'\xff', '\xff'};
  CHECK(pnm(p5wide) == GrayImage(1, 1, {255}));

  std::string p6 = "P6 1 1 255\n";
  p6 += std::string{'\x00', '\xff', '\x00'};
  CHECK(pnm(p6) == GrayImage(1, 1, {150}));
}

TEST_CASE("malformed anymaps") {
  CHECK_THROWS_AS(pnm("P7 1 1 255 0"), IoError);
  CHECK_THROWS_AS(pnm("P2 0 1 255"), IoError);
  CHECK_THROWS_AS(pnm("P2 2 2 255 1 2 3"), IoError);
  CHECK_THROWS_AS(pnm("P2 1 1 255 300"), IoError);
  CHECK_THROWS_AS(pnm("P2 1 1 0 0"), IoError);
  CHECK_THROWS_AS(pnm("P5 4 1 255\nab"), IoError);
  CHECK_THROWS_AS(pnm("P2 1 x"), IoError);
  CHECK_THROWS_AS(pnm(""), IoError);
}

TEST_CASE("pgm and png round trips") {
  gen::Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = gen::gray(rng, gen::uniform(rng, 1, 40), gen::uniform(rng, 1, 40));
    std::stringstream buf;
    write_pgm(buf, img);
    CHECK(read_pnm(buf) == img);

    const auto png = temp("rt.png");
    write_image(png, img);
    CHECK(read_png(png) == img);
    CHECK(read_image(png) == img);

    const auto pgm = temp("rt.pgm");
    write_image(pgm, img);
    CHECK(read_image(pgm) == img);
    std::filesystem::remove(png);
    std::filesystem::remove(pgm);
  }
}

TEST_CASE("masks and missing files") {
  BinaryMask m(4, 3);
  m.set(1, 2, true);
  const auto path = temp("mask.png");
  write_mask(path, m);
  const GrayImage back = read_image(path);
  CHECK(back.at(1, 2) == 255);
  CHECK(back.at(0, 0) == 0);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(read_image(temp("absent.png")), IoError);
  const auto junk = temp("junk.png");
  std::ofstream(junk) << "not an image";
  CHECK_THROWS_AS(read_image(junk), IoError);
  std::filesystem::remove(junk);
}
