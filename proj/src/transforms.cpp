#include "fic/transforms.hpp"

#include <string>

namespace fic {

Symmetry symmetry_from_index(int index) {
  if (index < 0 || index >= kSymmetryCount)
    raise(Errc::OutOfRange, "symmetry index " + std::to_string(index));
  return static_cast<Symmetry>(index);
}

SourceCoord symmetry_source(Symmetry s, int r, int c, int side) {
  const int m = side - 1;
  switch (s) {
    case Symmetry::Identity: return {r, c};
    case Symmetry::Rot90: return {m - c, r};
    case Symmetry::Rot180: return {m - r, m - c};
    case Symmetry::Rot270: return {c, m - r};
    case Symmetry::FlipH: return {r, m - c};
    case Symmetry::FlipV: return {m - r, c};
    case Symmetry::Transpose: return {c, r};
    case Symmetry::AntiTranspose: return {m - c, m - r};
  }
  raise(Errc::OutOfRange, "symmetry");
}

Block apply_symmetry(const Block& b, Symmetry s) {
  Block out;
  out.side = b.side;
  out.samples.resize(b.samples.size());
  for (int r = 0; r < b.side; ++r) {
    for (int c = 0; c < b.side; ++c) {
      const SourceCoord src = symmetry_source(s, r, c, b.side);
      out.at(r, c) = b.at(src.r, src.c);
    }
  }
  return out;
}

namespace {
// compose[i][j]: apply i, then j. Verified exhaustively in the test suite.
constexpr std::uint8_t kComposeTable[kSymmetryCount][kSymmetryCount] = {
    {0, 1, 2, 3, 4, 5, 6, 7},
    {1, 2, 3, 0, 6, 7, 5, 4},
    {2, 3, 0, 1, 5, 4, 7, 6},
    {3, 0, 1, 2, 7, 6, 4, 5},
    {4, 7, 5, 6, 0, 2, 3, 1},
    {5, 6, 4, 7, 2, 0, 1, 3},
    {6, 4, 7, 5, 1, 3, 0, 2},
    {7, 5, 6, 4, 3, 1, 2, 0},
};
}  // namespace

Symmetry compose_symmetries(Symmetry i, Symmetry j) {
  return static_cast<Symmetry>(kComposeTable[static_cast<int>(i)][static_cast<int>(j)]);
}

Block contract(const Block& d) {
  if (d.side % 2 != 0) raise(Errc::OddSide, "side " + std::to_string(d.side));
  Block out;
  out.side = d.side / 2;
  out.samples.resize(static_cast<std::size_t>(out.side) * out.side);
  for (int r = 0; r < out.side; ++r) {
    for (int c = 0; c < out.side; ++c) {
      out.at(r, c) = (d.at(2 * r, 2 * c) + d.at(2 * r, 2 * c + 1) + d.at(2 * r + 1, 2 * c) +
                      d.at(2 * r + 1, 2 * c + 1)) /
                     4.0;
    }
  }
  return out;
}

Block apply_brightness(const Block& b, double s, double o) {
  Block out = b;
  for (double& z : out.samples) z = s * z + o;
  return out;
}

}  // namespace fic
