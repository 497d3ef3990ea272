#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fic/error.hpp"

namespace fic {

struct CodecParams;

/// 8-bit grayscale raster, row-major. data[y * width + x].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

  bool operator==(const GrayImage&) const = default;
};

GrayImage make_constant_image(int width, int height, std::uint8_t value);

/// Parses a PGM (binary "P5" or ASCII "P2", maxval 255, '#' header comments).
/// Throws MalformedHeader, UnsupportedMaxval, TruncatedData.
GrayImage load_pgm(std::span<const std::uint8_t> bytes);

/// Emits binary P5 with maxval 255. load_pgm(write_pgm(img)) == img bit-exactly.
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

GrayImage read_pgm_file(const std::string& path);
void write_pgm_file(const std::string& path, const GrayImage& img);

/// Checks the geometry the encoder assumes: square, power-of-two side,
/// side divisible by the range size n, and room for at least one 2n x 2n
/// domain. Throws NotSquare, NotPowerOfTwo, IndivisibleByRange,
/// TooSmallForDomain.
void validate_geometry(const GrayImage& img, const CodecParams& params);

}  // namespace fic
