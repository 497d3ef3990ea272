#pragma once

#include <cstdint>
#include <vector>

#include "fic/error.hpp"

namespace fic {

/// Square tile of real-valued intensities, row-major. Samples stay real
/// through contraction and regression; rounding to 8 bits happens only at
/// decoder output.
struct Block {
  int side = 0;
  std::vector<double> samples;

  Block() = default;
  Block(int side_, std::vector<double> samples_) : side(side_), samples(std::move(samples_)) {}
  static Block filled(int side, double value) {
    return Block(side, std::vector<double>(static_cast<std::size_t>(side) * side, value));
  }

  double at(int r, int c) const { return samples[static_cast<std::size_t>(r) * side + c]; }
  double& at(int r, int c) { return samples[static_cast<std::size_t>(r) * side + c]; }

  bool operator==(const Block&) const = default;
};

/// The eight square symmetries. The numbering is normative: it is what the
/// serialized format stores in the 3-bit symmetry field.
enum class Symmetry : std::uint8_t {
  Identity = 0,
  Rot90 = 1,   // clockwise
  Rot180 = 2,
  Rot270 = 3,  // clockwise
  FlipH = 4,   // mirror columns
  FlipV = 5,   // mirror rows
  Transpose = 6,
  AntiTranspose = 7,
};

inline constexpr int kSymmetryCount = 8;

Symmetry symmetry_from_index(int index);  // throws OutOfRange

/// Source coordinates (r, c) that output cell (r, c) of apply_symmetry
/// reads from, for a block of the given side.
struct SourceCoord {
  int r, c;
};
SourceCoord symmetry_source(Symmetry s, int r, int c, int side);

Block apply_symmetry(const Block& b, Symmetry s);

/// k with apply(x, k) == apply(apply(x, i), j) for every block x.
Symmetry compose_symmetries(Symmetry i, Symmetry j);

/// 2:1 spatial contraction: each output pixel is the arithmetic mean of the
/// corresponding 2x2 input group. Throws OddSide.
Block contract(const Block& d);

/// Brightness map z -> s*z + o, unclamped. The decoder clamps to [0, 255]
/// only when producing final pixels.
Block apply_brightness(const Block& b, double s, double o);

}  // namespace fic
