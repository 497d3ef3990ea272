#include "fic/codebook.hpp"

#include <string>

namespace fic {

int positions_per_axis(int width, int n, int step) {
  if (step < 1) raise(Errc::BadParams, "step must be >= 1");
  if (width < 2 * n) raise(Errc::NoValidPositions, "width " + std::to_string(width) + " < 2n");
  return (width - 2 * n) / step + 1;
}

std::vector<DomainPosition> domain_positions(int width, int n, int step) {
  const int per_axis = positions_per_axis(width, n, step);
  std::vector<DomainPosition> positions;
  positions.reserve(static_cast<std::size_t>(per_axis) * per_axis);
  for (int x = 0; x + 2 * n <= width; x += step)
    for (int y = 0; y + 2 * n <= width; y += step) positions.push_back({x, y});
  return positions;
}

std::size_t codebook_size(int width, int n, int step) {
  const std::size_t per_axis = static_cast<std::size_t>(positions_per_axis(width, n, step));
  return per_axis * per_axis;
}

Block extract_block(const GrayImage& img, int x, int y, int side) {
  if (x < 0 || y < 0 || x + side > img.width || y + side > img.height)
    raise(Errc::OutOfBounds, std::to_string(side) + "-wide window at (" + std::to_string(x) + ", " +
                                 std::to_string(y) + ")");
  Block b;
  b.side = side;
  b.samples.reserve(static_cast<std::size_t>(side) * side);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) b.samples.push_back(static_cast<double>(img.at(x + c, y + r)));
  return b;
}

CodeBlock make_code_block(const GrayImage& img, DomainPosition pos, Symmetry sym, int n) {
  CodeBlock cb;
  cb.origin = pos;
  cb.symmetry = sym;
  // Contraction first, then the symmetry; the two commute, and contracting
  // first halves the pixel count the transform touches.
  cb.pixels = apply_symmetry(contract(extract_block(img, pos.x, pos.y, 2 * n)), sym);
  for (double v : cb.pixels.samples) {
    cb.sum += v;
    cb.sum_sq += v * v;
  }
  return cb;
}

}  // namespace fic
