#pragma once

#include <optional>
#include <vector>

#include "fic/encoded_image.hpp"
#include "fic/image.hpp"

namespace fic {

/// Real-valued raster used by the iterative decoder. Pixels stay
/// unrounded across iterations; quantization to 8 bits happens once, at
/// the end of decode().
struct RealRaster {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
};

RealRaster raster_from_image(const GrayImage& img);
RealRaster constant_raster(int width, int height, double value);

/// Root-mean-square difference between two rasters of equal geometry.
double raster_rmse(const RealRaster& a, const RealRaster& b);

enum class InitialRaster { MidGray, Black, Supplied };

struct DecodeParams {
  int scale = 1;       // linear magnification k; output side = k * width
  int iterations = 16;
  InitialRaster initial = InitialRaster::MidGray;
  const GrayImage* supplied = nullptr;  // used when initial == Supplied
  std::optional<double> convergence_eps;  // early stop on RMSE delta
};

/// One application of the stored transform W at magnification k: every
/// mapping reads its 2kn x 2kn domain window from `current`, contracts,
/// applies its symmetry and brightness map, and writes its kn x kn range
/// slot. Ranges partition the raster, so each output pixel is written
/// exactly once. Throws ScaleMismatch when `current` has the wrong
/// geometry.
RealRaster decode_step(const RealRaster& current, const EncodedImage& enc, int scale);

GrayImage decode(const EncodedImage& enc, const DecodeParams& params = {});

struct DecodeResult {
  GrayImage image;
  int iterations_run = 0;
  std::vector<double> step_rmse;  // step_rmse[t] = RMSE(iterate t, iterate t+1)
};

DecodeResult decode_traced(const EncodedImage& enc, const DecodeParams& params = {});

/// RMSE between img and one application of W to img — the collage error
/// the encoder minimized. Throws DimensionMismatch.
double collage_error(const GrayImage& img, const EncodedImage& enc);

/// Collage-theorem style bound on the attractor error: collage_rmse /
/// (1 - s_max). Throws NonContractive when s_max >= 1.
double decoded_error_bound(double collage_rmse, double s_max);

}  // namespace fic
