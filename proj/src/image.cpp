#include "fic/image.hpp"

#include <bit>
#include <cctype>
#include <fstream>
#include <limits>
#include <string>

#include "fic/params.hpp"

namespace fic {

GrayImage make_constant_image(int width, int height, std::uint8_t value) {
  GrayImage img;
  img.width = width;
  img.height = height;
  img.data.assign(static_cast<std::size_t>(width) * height, value);
  return img;
}

namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Reads the next whitespace-delimited token, skipping '#' comments.
  std::string next_token() {
    skip_separators();
    std::string tok;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) tok.push_back(static_cast<char>(bytes_[pos_++]));
    return tok;
  }

  // Consumes exactly one whitespace byte; the binary raster starts after it.
  void consume_raster_separator() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      raise(Errc::MalformedHeader, "missing separator before raster");
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

long parse_header_int(const std::string& tok, const char* what) {
  if (tok.empty()) raise(Errc::MalformedHeader, std::string("missing ") + what);
  long value = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      raise(Errc::MalformedHeader, std::string("non-numeric ") + what + " '" + tok + "'");
    value = value * 10 + (c - '0');
    if (value > std::numeric_limits<int>::max())
      raise(Errc::MalformedHeader, std::string(what) + " out of range");
  }
  return value;
}

}  // namespace

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
  HeaderScanner scan(bytes);
  const std::string magic = scan.next_token();
  const bool binary = magic == "P5";
  if (!binary && magic != "P2") raise(Errc::MalformedHeader, "magic '" + magic + "' is not P5/P2");

  const long width = parse_header_int(scan.next_token(), "width");
  const long height = parse_header_int(scan.next_token(), "height");
  if (width <= 0 || height <= 0) raise(Errc::MalformedHeader, "zero-sized image");
  const long maxval = parse_header_int(scan.next_token(), "maxval");
  if (maxval != 255) raise(Errc::UnsupportedMaxval, "maxval " + std::to_string(maxval) + " != 255");

  GrayImage img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  const std::size_t count = img.pixel_count();
  img.data.reserve(count);

  if (binary) {
    scan.consume_raster_separator();
    if (bytes.size() - scan.pos() < count)
      raise(Errc::TruncatedData, std::to_string(bytes.size() - scan.pos()) + " raster bytes, need " +
                                     std::to_string(count));
    img.data.assign(bytes.begin() + scan.pos(), bytes.begin() + scan.pos() + count);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::string tok = scan.next_token();
      if (tok.empty())
        raise(Errc::TruncatedData, std::to_string(i) + " samples, need " + std::to_string(count));
      const long v = parse_header_int(tok, "sample");
      if (v > maxval) raise(Errc::MalformedHeader, "sample " + std::to_string(v) + " exceeds maxval");
      img.data.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + img.data.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), img.data.begin(), img.data.end());
  return out;
}

GrayImage read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_pgm(bytes);
}

void write_pgm_file(const std::string& path, const GrayImage& img) {
  const auto bytes = write_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::IoError, "cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::IoError, "short write to " + path);
}

void validate_geometry(const GrayImage& img, const CodecParams& params) {
  const CodecParams p = params.normalized();
  if (img.width != img.height)
    raise(Errc::NotSquare, std::to_string(img.width) + "x" + std::to_string(img.height));
  if (img.width <= 0 || !std::has_single_bit(static_cast<unsigned>(img.width)))
    raise(Errc::NotPowerOfTwo, "side " + std::to_string(img.width));
  if (img.width % p.n != 0)
    raise(Errc::IndivisibleByRange, "side " + std::to_string(img.width) + ", n " + std::to_string(p.n));
  if (img.width < 2 * p.n)
    raise(Errc::TooSmallForDomain,
          "side " + std::to_string(img.width) + " cannot hold a " + std::to_string(2 * p.n) + "-wide domain");
}

}  // namespace fic
