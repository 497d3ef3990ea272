#pragma once

#include <cstdint>
#include <vector>

#include "fic/encoded_image.hpp"
#include "fic/image.hpp"
#include "fic/params.hpp"
#include "fic/transforms.hpp"

namespace fic {

/// Continuous regression coefficients and the residual scored with them.
struct LinearFit {
  double s = 0.0;
  double o = 0.0;
  double residual = 0.0;
};

/// Quantized coefficients plus their dequantized values and the residual
/// scored with the dequantized values — exactly what the decoder will
/// apply, so the encoder ranks candidates by realized error.
struct QuantizedFit {
  std::uint32_t qs = 0;
  std::uint32_t qo = 0;
  double s = 0.0;
  double o = 0.0;
  double residual = 0.0;
};

/// True iff N * sum(b^2) - sum(b)^2 <= eps.
bool is_shadow(const Block& b, double eps);

/// Unconstrained least-squares fit of b ~ s*a + o, with the degenerate
/// zero-variance branch (s=0, o=mean). No clamping, no quantization.
/// Throws SideMismatch.
LinearFit least_squares_fit(const Block& a, const Block& b, double shadow_eps = 0.0);

/// Fit with the scale clamped to [-s_max, s_max], the offset re-fitted for
/// the clamped scale and clamped to [-255, 255]. Still unquantized.
LinearFit least_squares_clamped(const Block& a, const Block& b, const CodecParams& params);

/// Full pipeline: clamped fit, coefficients pushed through the format
/// quantizers, residual re-scored with the dequantized values.
QuantizedFit least_squares(const Block& a, const Block& b, const CodecParams& params);

/// Search instrumentation. Counters are exact in sequential mode and
/// summed across workers in parallel mode.
struct EncodeStats {
  std::uint64_t candidates_tested = 0;      // (domain, symmetry) pairs scored
  std::uint64_t shadow_ranges = 0;          // ranges resolved by the shadow rule
  std::uint64_t shadow_codeblocks = 0;      // zero-variance candidates skipped
};

/// Work-unit geometry for the parallel encoder: how many range blocks
/// (columns x rows) one schedulable unit covers.
struct ChunkGeometry {
  int w = 16;
  int h = 16;
};

/// Best mapping for the n x n range at (x, y). Shadow ranges skip the
/// search entirely. Throws GeometryError when the origin is not aligned
/// to the range grid.
RangeMapping encode_range(const GrayImage& img, int x, int y, const CodecParams& params,
                          EncodeStats* stats = nullptr);

/// Full-search encoder, one range at a time in row-major order.
EncodedImage encode_sequential(const GrayImage& img, const CodecParams& params,
                               EncodeStats* stats = nullptr);

/// Deterministic data-parallel encoder: ranges are partitioned into
/// chunk-sized units, each mapping slot is owned by exactly one unit, and
/// candidate order inside a search never depends on scheduling. Output is
/// byte-identical to encode_sequential for every worker count and chunk
/// geometry.
EncodedImage encode_parallel(const GrayImage& img, const CodecParams& params, int workers,
                             ChunkGeometry chunk = {}, EncodeStats* stats = nullptr);

}  // namespace fic
