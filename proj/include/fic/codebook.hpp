#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "fic/image.hpp"
#include "fic/transforms.hpp"

namespace fic {

/// Top-left corner of a 2n x 2n domain window, in pixels.
struct DomainPosition {
  int x = 0;  // left edge (column)
  int y = 0;  // top edge (row)

  auto operator<=>(const DomainPosition&) const = default;
};

/// All domain origins on the STEP grid, in canonical order: x outer
/// ascending, y inner ascending. This order defines encoder tie-breaking
/// and is therefore part of the format contract.
/// Throws NoValidPositions when no 2n x 2n window fits.
std::vector<DomainPosition> domain_positions(int width, int n, int step);

/// Valid origins per axis: floor((width - 2n) / step) + 1.
int positions_per_axis(int width, int n, int step);

/// Number of grid positions (symmetries are counted separately, as a
/// factor of 8 applied by the encoder search).
std::size_t codebook_size(int width, int n, int step);

/// One codebook element: the contracted, symmetry-transformed domain
/// sample, with its pixel sums cached for the regression.
struct CodeBlock {
  DomainPosition origin;
  Symmetry symmetry = Symmetry::Identity;
  Block pixels;    // side n
  double sum = 0;  // sum of pixels
  double sum_sq = 0;
};

/// Extracts the 2n x 2n window at pos, contracts it, applies the symmetry,
/// and caches the sums. Throws OutOfBounds.
CodeBlock make_code_block(const GrayImage& img, DomainPosition pos, Symmetry sym, int n);

/// The 2n x 2n window at pos as a real-valued block. Throws OutOfBounds.
Block extract_block(const GrayImage& img, int x, int y, int side);

}  // namespace fic
