#include "fic/metrics.hpp"

#include <cmath>
#include <limits>

namespace fic {

double rmse(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height)
    raise(Errc::DimensionMismatch, "image geometry differs");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const int d = static_cast<int>(a.data[i]) - static_cast<int>(b.data[i]);
    acc += static_cast<std::int64_t>(d) * d;
  }
  return std::sqrt(static_cast<double>(acc) / static_cast<double>(a.data.size()));
}

double psnr(const GrayImage& a, const GrayImage& b) {
  const double e = rmse(a, b);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(255.0 / e);
}

}  // namespace fic
