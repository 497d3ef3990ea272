#include "fic/format.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace fic {

void UniformQuantizer::quantize_range_error(double value) const {
  raise(Errc::OutOfRange, std::to_string(value) + " outside [-" + std::to_string(max_value) +
                              ", " + std::to_string(max_value) + "]");
}

void UniformQuantizer::dequantize_range_error(std::uint32_t code) const {
  raise(Errc::OutOfRange, "code " + std::to_string(code));
}

UniformQuantizer scale_quantizer(const CodecParams& params) {
  const CodecParams p = params.normalized();
  return UniformQuantizer{p.s_bits, p.s_max};
}

UniformQuantizer offset_quantizer(const CodecParams& params) {
  const CodecParams p = params.normalized();
  return UniformQuantizer{p.o_bits, 255.0};
}

namespace {

int ceil_log2(int count) {
  return count <= 1 ? 0 : static_cast<int>(std::bit_width(static_cast<unsigned>(count - 1)));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

// MSB-first bit packing within a record buffer.
void pack_bits(std::uint8_t* buf, int& bitpos, std::uint32_t value, int bits) {
  for (int i = bits - 1; i >= 0; --i) {
    if ((value >> i) & 1u) buf[bitpos / 8] |= static_cast<std::uint8_t>(0x80u >> (bitpos % 8));
    ++bitpos;
  }
}

std::uint32_t unpack_bits(const std::uint8_t* buf, int& bitpos, int bits) {
  std::uint32_t value = 0;
  for (int i = 0; i < bits; ++i) {
    value = (value << 1) | ((buf[bitpos / 8] >> (7 - bitpos % 8)) & 1u);
    ++bitpos;
  }
  return value;
}

struct RecordLayout {
  int x_bits, y_bits, s_bits, o_bits;
  int per_axis_x, per_axis_y;
  int total_bits() const { return x_bits + y_bits + 3 + s_bits + o_bits; }
  std::size_t total_bytes() const { return static_cast<std::size_t>((total_bits() + 7) / 8); }
};

RecordLayout record_layout(int width, int height, const CodecParams& p) {
  RecordLayout layout;
  layout.per_axis_x = positions_per_axis(width, p.n, p.step);
  layout.per_axis_y = positions_per_axis(height, p.n, p.step);
  layout.x_bits = ceil_log2(layout.per_axis_x);
  layout.y_bits = ceil_log2(layout.per_axis_y);
  layout.s_bits = p.s_bits;
  layout.o_bits = p.o_bits;
  return layout;
}

}  // namespace

int record_bits(int width, int height, const CodecParams& params) {
  return record_layout(width, height, params.normalized()).total_bits();
}

std::size_t record_bytes(int width, int height, const CodecParams& params) {
  return record_layout(width, height, params.normalized()).total_bytes();
}

std::size_t serialized_size(const EncodedImage& enc) {
  const CodecParams p = enc.params.normalized();
  return kHeaderBytes + enc.mappings.size() * record_layout(enc.width, enc.height, p).total_bytes();
}

std::vector<std::uint8_t> serialize(const EncodedImage& enc) {
  const CodecParams p = enc.params.normalized();
  const RecordLayout layout = record_layout(enc.width, enc.height, p);
  if (enc.mappings.size() != enc.range_count())
    raise(Errc::BadParams, "mapping count " + std::to_string(enc.mappings.size()) + " != range count " +
                               std::to_string(enc.range_count()));

  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + enc.mappings.size() * layout.total_bytes());
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, static_cast<std::uint32_t>(enc.width));
  put_u32(out, static_cast<std::uint32_t>(enc.height));
  put_u16(out, static_cast<std::uint16_t>(p.n));
  put_u16(out, static_cast<std::uint16_t>(p.step));
  out.push_back(static_cast<std::uint8_t>(p.s_bits));
  out.push_back(static_cast<std::uint8_t>(p.o_bits));
  put_u16(out, static_cast<std::uint16_t>(std::lround(p.s_max * 1000.0)));

  std::vector<std::uint8_t> record(layout.total_bytes());
  for (const RangeMapping& m : enc.mappings) {
    if (m.domain.x % p.step != 0 || m.domain.y % p.step != 0)
      raise(Errc::OutOfRange, "domain position off the step grid");
    const int xi = m.domain.x / p.step;
    const int yi = m.domain.y / p.step;
    if (xi >= layout.per_axis_x || yi >= layout.per_axis_y)
      raise(Errc::OutOfRange, "domain index outside the grid");
    std::fill(record.begin(), record.end(), 0);
    int bitpos = 0;
    pack_bits(record.data(), bitpos, static_cast<std::uint32_t>(xi), layout.x_bits);
    pack_bits(record.data(), bitpos, static_cast<std::uint32_t>(yi), layout.y_bits);
    pack_bits(record.data(), bitpos, static_cast<std::uint32_t>(m.symmetry), 3);
    pack_bits(record.data(), bitpos, m.qs, layout.s_bits);
    pack_bits(record.data(), bitpos, m.qo, layout.o_bits);
    out.insert(out.end(), record.begin(), record.end());
  }
  return out;
}

EncodedImage deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) raise(Errc::TruncatedData, "short header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) raise(Errc::MalformedHeader, "bad magic");

  EncodedImage enc;
  enc.width = static_cast<int>(get_u32(bytes.data() + 4));
  enc.height = static_cast<int>(get_u32(bytes.data() + 8));
  CodecParams p;
  p.n = get_u16(bytes.data() + 12);
  p.step = get_u16(bytes.data() + 14);
  p.s_bits = bytes[16];
  p.o_bits = bytes[17];
  p.s_max = get_u16(bytes.data() + 18) / 1000.0;
  enc.params = p.normalized();

  if (enc.width <= 0 || enc.height <= 0 || enc.width % p.n != 0 || enc.height % p.n != 0)
    raise(Errc::MalformedHeader, "dimensions incompatible with range size");

  const RecordLayout layout = record_layout(enc.width, enc.height, enc.params);
  const std::size_t count = enc.range_count();
  const std::size_t body = count * layout.total_bytes();
  if (bytes.size() - kHeaderBytes < body)
    raise(Errc::TruncatedData, std::to_string(bytes.size() - kHeaderBytes) + " body bytes, need " +
                                   std::to_string(body));

  enc.mappings.reserve(count);
  const std::uint8_t* rec = bytes.data() + kHeaderBytes;
  for (std::size_t i = 0; i < count; ++i, rec += layout.total_bytes()) {
    int bitpos = 0;
    RangeMapping m;
    const std::uint32_t xi = unpack_bits(rec, bitpos, layout.x_bits);
    const std::uint32_t yi = unpack_bits(rec, bitpos, layout.y_bits);
    if (xi >= static_cast<std::uint32_t>(layout.per_axis_x) ||
        yi >= static_cast<std::uint32_t>(layout.per_axis_y))
      raise(Errc::OutOfRange, "domain index outside the grid in record " + std::to_string(i));
    m.domain = {static_cast<int>(xi) * enc.params.step, static_cast<int>(yi) * enc.params.step};
    m.symmetry = static_cast<Symmetry>(unpack_bits(rec, bitpos, 3));
    m.qs = unpack_bits(rec, bitpos, layout.s_bits);
    m.qo = unpack_bits(rec, bitpos, layout.o_bits);
    enc.mappings.push_back(m);
  }
  return enc;
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot open " + path);
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::IoError, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::IoError, "short write to " + path);
}

double compression_ratio(const EncodedImage& enc, std::size_t raw_bytes) {
  if (raw_bytes == 0) raise(Errc::BadParams, "raw size is zero; ratio undefined");
  return static_cast<double>(serialized_size(enc)) / static_cast<double>(raw_bytes);
}

double size_reduction_pct(const EncodedImage& enc, std::size_t raw_bytes) {
  return (1.0 - compression_ratio(enc, raw_bytes)) * 100.0;
}

double size_reduction_at(const EncodedImage& enc, std::size_t raw_bytes, int area_factor) {
  if (area_factor < 1) raise(Errc::BadParams, "area factor must be >= 1");
  return 100.0 - (100.0 - size_reduction_pct(enc, raw_bytes)) / area_factor;
}

}  // namespace fic
