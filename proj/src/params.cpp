#include "fic/params.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace fic {

CodecParams CodecParams::normalized() const {
  CodecParams p = *this;
  if (p.n < 2 || !std::has_single_bit(static_cast<unsigned>(p.n)))
    raise(Errc::BadParams, "n must be a power of two >= 2, got " + std::to_string(p.n));
  if (p.step == 0) p.step = p.n;
  if (p.step < 1) raise(Errc::BadParams, "step must be >= 1");
  if (p.s_bits < 1 || p.s_bits > 16) raise(Errc::BadParams, "s_bits must be in [1, 16]");
  if (p.o_bits < 1 || p.o_bits > 16) raise(Errc::BadParams, "o_bits must be in [1, 16]");
  if (!(p.s_max > 0.0)) raise(Errc::BadParams, "s_max must be positive");
  if (p.s_max > 65.535) raise(Errc::BadParams, "s_max exceeds the header's milli-precision range");
  p.s_max = std::lround(p.s_max * 1000.0) / 1000.0;
  if (!(p.s_max > 0.0)) raise(Errc::BadParams, "s_max rounds to zero at milli precision");
  if (p.shadow_eps < 0.0) raise(Errc::BadParams, "shadow_eps must be non-negative");
  return p;
}

}  // namespace fic
