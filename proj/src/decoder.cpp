#include "fic/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fic/format.hpp"
#include "fic/transforms.hpp"

namespace fic {

RealRaster raster_from_image(const GrayImage& img) {
  RealRaster r;
  r.width = img.width;
  r.height = img.height;
  r.v.assign(img.data.begin(), img.data.end());
  return r;
}

RealRaster constant_raster(int width, int height, double value) {
  RealRaster r;
  r.width = width;
  r.height = height;
  r.v.assign(static_cast<std::size_t>(width) * height, value);
  return r;
}

double raster_rmse(const RealRaster& a, const RealRaster& b) {
  if (a.width != b.width || a.height != b.height)
    raise(Errc::DimensionMismatch, "raster geometry differs");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) {
    const double d = a.v[i] - b.v[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.v.size()));
}

RealRaster decode_step(const RealRaster& current, const EncodedImage& enc, int scale) {
  if (scale < 1) raise(Errc::BadParams, "scale must be >= 1");
  const CodecParams p = enc.params.normalized();
  const int out_w = enc.width * scale;
  const int out_h = enc.height * scale;
  if (current.width != out_w || current.height != out_h)
    raise(Errc::ScaleMismatch, "raster is " + std::to_string(current.width) + "x" +
                                   std::to_string(current.height) + ", expected " +
                                   std::to_string(out_w) + "x" + std::to_string(out_h));
  if (enc.mappings.size() != enc.range_count())
    raise(Errc::BadParams, "mapping count does not cover the range grid");

  const UniformQuantizer squant{p.s_bits, p.s_max};
  const UniformQuantizer oquant{p.o_bits, 255.0};
  const int kn = p.n * scale;  // range side at this magnification
  const int ranges_x = enc.width / p.n;
  const int ranges_y = enc.height / p.n;

  RealRaster next = constant_raster(out_w, out_h, 0.0);
  for (int ry = 0; ry < ranges_y; ++ry) {
    for (int rx = 0; rx < ranges_x; ++rx) {
      const RangeMapping& m = enc.mappings[static_cast<std::size_t>(ry) * ranges_x + rx];
      const double s = squant.dequantize(m.qs);
      const double o = oquant.dequantize(m.qo);
      const int dx = m.domain.x * scale;
      const int dy = m.domain.y * scale;
      for (int r = 0; r < kn; ++r) {
        double* out_row = &next.v[static_cast<std::size_t>(ry * kn + r) * out_w + rx * kn];
        for (int c = 0; c < kn; ++c) {
          const SourceCoord src = symmetry_source(m.symmetry, r, c, kn);
          const double* row0 = &current.v[static_cast<std::size_t>(dy + 2 * src.r) * out_w + dx];
          const double* row1 = row0 + out_w;
          const double z =
              (row0[2 * src.c] + row0[2 * src.c + 1] + row1[2 * src.c] + row1[2 * src.c + 1]) / 4.0;
          out_row[c] = s * z + o;
        }
      }
    }
  }
  return next;
}

namespace {

RealRaster initial_raster(const EncodedImage& enc, const DecodeParams& params) {
  const int out_w = enc.width * params.scale;
  const int out_h = enc.height * params.scale;
  switch (params.initial) {
    case InitialRaster::MidGray: return constant_raster(out_w, out_h, 128.0);
    case InitialRaster::Black: return constant_raster(out_w, out_h, 0.0);
    case InitialRaster::Supplied: {
      if (params.supplied == nullptr) raise(Errc::BadParams, "no supplied initial image");
      if (params.supplied->width != out_w || params.supplied->height != out_h)
        raise(Errc::ScaleMismatch, "supplied initial image has the wrong geometry");
      return raster_from_image(*params.supplied);
    }
  }
  raise(Errc::BadParams, "initial raster kind");
}

GrayImage quantize_raster(const RealRaster& r) {
  GrayImage img;
  img.width = r.width;
  img.height = r.height;
  img.data.resize(r.v.size());
  for (std::size_t i = 0; i < r.v.size(); ++i) {
    const double clamped = std::clamp(r.v[i], 0.0, 255.0);
    img.data[i] = static_cast<std::uint8_t>(std::lround(clamped));
  }
  return img;
}

}  // namespace

DecodeResult decode_traced(const EncodedImage& enc, const DecodeParams& params) {
  if (params.scale < 1) raise(Errc::BadParams, "scale must be >= 1");
  if (params.iterations < 1) raise(Errc::BadParams, "iterations must be >= 1");

  RealRaster current = initial_raster(enc, params);
  DecodeResult result;
  for (int it = 0; it < params.iterations; ++it) {
    RealRaster next = decode_step(current, enc, params.scale);
    result.step_rmse.push_back(raster_rmse(current, next));
    current = std::move(next);
    ++result.iterations_run;
    if (params.convergence_eps && result.step_rmse.back() < *params.convergence_eps) break;
  }
  result.image = quantize_raster(current);
  return result;
}

GrayImage decode(const EncodedImage& enc, const DecodeParams& params) {
  return decode_traced(enc, params).image;
}

double collage_error(const GrayImage& img, const EncodedImage& enc) {
  if (img.width != enc.width || img.height != enc.height)
    raise(Errc::DimensionMismatch, "image does not match the encoding's geometry");
  const RealRaster original = raster_from_image(img);
  const RealRaster stepped = decode_step(original, enc, 1);
  return raster_rmse(original, stepped);
}

double decoded_error_bound(double collage_rmse, double s_max) {
  if (s_max >= 1.0)
    raise(Errc::NonContractive, "s_max " + std::to_string(s_max) + " admits no attractor bound");
  return collage_rmse / (1.0 - s_max);
}

}  // namespace fic
