#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fic/encoded_image.hpp"
#include "fic/params.hpp"

namespace fic {

/// Uniform quantizer over [-max_value, max_value] with 2^bits codes.
/// Code 0 is reserved for exactly 0, so the degenerate s=0 / o=0 fits
/// survive quantization bit-for-bit; codes 1..2^bits-1 span
/// (-max_value, max_value] uniformly with the top code hitting +max_value
/// exactly.
struct UniformQuantizer {
  int bits;
  double max_value;

  std::uint32_t max_code() const { return (1u << bits) - 1; }

  /// Throws OutOfRange when |value| > max_value. Rounds half away from
  /// zero; the argument of the truncation is non-negative by the range
  /// check, so +0.5-and-truncate implements that exactly.
  std::uint32_t quantize(double value) const {
    if (!(value >= -max_value && value <= max_value)) quantize_range_error(value);
    if (value == 0.0) return 0;
    const double m = static_cast<double>(max_code());
    const double scaled = (value + max_value) / (2.0 * max_value) * m;
    const auto code = static_cast<std::uint32_t>(scaled + 0.5);
    return code < 1 ? 1 : (code > max_code() ? max_code() : code);
  }

  double dequantize(std::uint32_t code) const {
    if (code > max_code()) dequantize_range_error(code);
    if (code == 0) return 0.0;
    // code/max_code first so the top code dequantizes to +max_value exactly.
    return -max_value + (2.0 * max_value) * (static_cast<double>(code) / max_code());
  }

  /// Worst-case round-trip error: one full step (the reserved zero code
  /// leaves a gap at the -max_value edge).
  double step() const { return 2.0 * max_value / max_code(); }

 private:
  [[noreturn]] void quantize_range_error(double value) const;
  [[noreturn]] void dequantize_range_error(std::uint32_t code) const;
};

UniformQuantizer scale_quantizer(const CodecParams& params);
UniformQuantizer offset_quantizer(const CodecParams& params);

inline constexpr std::size_t kHeaderBytes = 20;
inline constexpr char kMagic[4] = {'F', 'I', 'C', '1'};

/// Bits per serialized mapping record before byte padding:
/// x index + y index + 3 (symmetry) + s_bits + o_bits.
int record_bits(int width, int height, const CodecParams& params);
std::size_t record_bytes(int width, int height, const CodecParams& params);

std::size_t serialized_size(const EncodedImage& enc);
std::vector<std::uint8_t> serialize(const EncodedImage& enc);
EncodedImage deserialize(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes);

/// serialized size / raw size. Throws BadParams when raw_bytes == 0.
double compression_ratio(const EncodedImage& enc, std::size_t raw_bytes);
double size_reduction_pct(const EncodedImage& enc, std::size_t raw_bytes);

/// Effective reduction when the same encoding is decoded at area_factor
/// times the original pixel count: 100 - (100 - r) / area_factor.
double size_reduction_at(const EncodedImage& enc, std::size_t raw_bytes, int area_factor);

}  // namespace fic
