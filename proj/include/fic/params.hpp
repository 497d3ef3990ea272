#pragma once

#include "fic/error.hpp"

namespace fic {

/// Knobs shared by the encoder, the serialized format, and the decoder.
struct CodecParams {
  int n = 4;               // range block side; domains are 2n x 2n
  int step = 0;            // domain grid spacing; 0 means "track n"
  int s_bits = 5;          // quantizer width for the scale coefficient
  int o_bits = 7;          // quantizer width for the offset coefficient
  double s_max = 1.0;      // scale clamp magnitude; stored with milli precision
  double shadow_eps = 0.0; // variance threshold for the shadow-block test

  int effective_step() const { return step == 0 ? n : step; }

  /// Returns a copy with step resolved and s_max snapped to the milli
  /// precision the file header carries (encoder and decoder must agree on
  /// s_max bit-for-bit). Throws BadParams on invariant violations.
  CodecParams normalized() const;

  bool operator==(const CodecParams&) const = default;
};

}  // namespace fic
