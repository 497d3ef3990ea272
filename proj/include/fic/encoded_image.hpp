#pragma once

#include <cstdint>
#include <vector>

#include "fic/codebook.hpp"
#include "fic/params.hpp"
#include "fic/transforms.hpp"

namespace fic {

/// Per-range record: where the range maps from and the quantized
/// brightness coefficients. `residual` is a diagnostic (the collage error
/// contribution scored with the dequantized coefficients); it is not
/// serialized and does not participate in equality.
struct RangeMapping {
  DomainPosition domain;
  Symmetry symmetry = Symmetry::Identity;
  std::uint32_t qs = 0;
  std::uint32_t qo = 0;
  double residual = 0.0;

  bool operator==(const RangeMapping& o) const {
    return domain == o.domain && symmetry == o.symmetry && qs == o.qs && qo == o.qo;
  }
};

/// Header + row-major list of range mappings (range row outer, range
/// column inner); the unit of serialization and decoding.
struct EncodedImage {
  int width = 0;
  int height = 0;
  CodecParams params;
  std::vector<RangeMapping> mappings;

  std::size_t range_count() const {
    return static_cast<std::size_t>(width / params.n) * (height / params.n);
  }

  bool operator==(const EncodedImage&) const = default;
};

}  // namespace fic
