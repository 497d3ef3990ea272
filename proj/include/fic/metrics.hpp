#pragma once

#include "fic/image.hpp"

namespace fic {

/// Throws DimensionMismatch when the images differ in geometry.
double rmse(const GrayImage& a, const GrayImage& b);

/// 20*log10(255 / rmse) dB; +infinity for identical images.
double psnr(const GrayImage& a, const GrayImage& b);

}  // namespace fic
