#pragma once

// Brute-force reference encoder. Independent of src/encoder.cpp: it
// enumerates every (domain, symmetry) candidate in canonical order, fits
// and quantizes with its own arithmetic, and scores each candidate by
// direct term-by-term evaluation of the residual sum. The production
// encoder must reproduce its choices and residuals bit-for-bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "fic/codebook.hpp"
#include "fic/encoded_image.hpp"
#include "fic/image.hpp"
#include "fic/params.hpp"
#include "fic/transforms.hpp"

namespace fic::testing {

inline std::uint32_t oracle_quantize(double v, double maxv, int bits) {
  if (v == 0.0) return 0;
  const double m = static_cast<double>((1u << bits) - 1);
  // Half-away-from-zero on a non-negative argument: +0.5 and truncate.
  auto code = static_cast<std::uint32_t>((v + maxv) / (2.0 * maxv) * m + 0.5);
  if (code < 1) code = 1;
  if (code > static_cast<std::uint32_t>(m)) code = static_cast<std::uint32_t>(m);
  return code;
}

inline double oracle_dequantize(std::uint32_t code, double maxv, int bits) {
  if (code == 0) return 0.0;
  const double m = static_cast<double>((1u << bits) - 1);
  return -maxv + (2.0 * maxv) * (static_cast<double>(code) / m);
}

struct OracleCandidate {
  DomainPosition domain;
  Symmetry symmetry;
  std::uint32_t qs, qo;
  double residual;
};

// Quantized fit + direct residual for one candidate pair.
inline OracleCandidate oracle_score(const Block& a, const Block& b, const CodecParams& p,
                                    DomainPosition pos, Symmetry sym) {
  const double n = static_cast<double>(a.samples.size());
  double sa = 0, sb = 0, saa = 0, sab = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    sa += a.samples[i];
    sb += b.samples[i];
    saa += a.samples[i] * a.samples[i];
    sab += a.samples[i] * b.samples[i];
  }
  const double den = n * saa - sa * sa;
  const double num = n * sab - sa * sb;
  const double s = std::clamp(num / den, -p.s_max, p.s_max);
  const double o = std::clamp((sb - s * sa) / n, -255.0, 255.0);
  const std::uint32_t qs = oracle_quantize(s, p.s_max, p.s_bits);
  const std::uint32_t qo = oracle_quantize(o, 255.0, p.o_bits);
  const double sd = oracle_dequantize(qs, p.s_max, p.s_bits);
  const double od = oracle_dequantize(qo, 255.0, p.o_bits);
  double r = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = sd * a.samples[i] + od - b.samples[i];
    r += d * d;
  }
  return {pos, sym, qs, qo, r};
}

inline bool oracle_is_flat(const Block& b, double eps) {
  double sum = 0, sum_sq = 0;
  for (double v : b.samples) {
    sum += v;
    sum_sq += v * v;
  }
  return static_cast<double>(b.samples.size()) * sum_sq - sum * sum <= eps;
}

inline OracleCandidate oracle_flat_mapping(const Block& range, const CodecParams& p) {
  double sum = 0;
  for (double v : range.samples) sum += v;
  const double o = sum / static_cast<double>(range.samples.size());
  const std::uint32_t qo = oracle_quantize(o, 255.0, p.o_bits);
  const double od = oracle_dequantize(qo, 255.0, p.o_bits);
  double r = 0.0;
  for (double v : range.samples) {
    const double d = od - v;
    r += d * d;
  }
  return {DomainPosition{0, 0}, Symmetry::Identity, 0, qo, r};
}

struct OracleRange {
  OracleCandidate best;
  std::size_t candidates = 0;  // pairs actually scored
  bool shadow = false;
};

inline OracleRange oracle_encode_range(const GrayImage& img, int x, int y,
                                       const CodecParams& params) {
  const CodecParams p = params.normalized();
  const Block range = extract_block(img, x, y, p.n);
  OracleRange out;
  if (oracle_is_flat(range, p.shadow_eps)) {
    out.best = oracle_flat_mapping(range, p);
    out.shadow = true;
    return out;
  }
  double best_r = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const DomainPosition& pos : domain_positions(img.width, p.n, p.step)) {
    for (int si = 0; si < kSymmetryCount; ++si) {
      const Symmetry sym = static_cast<Symmetry>(si);
      const CodeBlock cb = make_code_block(img, pos, sym, p.n);
      if (oracle_is_flat(cb.pixels, p.shadow_eps)) continue;
      ++out.candidates;
      const OracleCandidate cand = oracle_score(cb.pixels, range, p, pos, sym);
      if (cand.residual < best_r) {
        best_r = cand.residual;
        out.best = cand;
        found = true;
      }
    }
  }
  if (!found) out.best = oracle_flat_mapping(range, p);
  return out;
}

inline std::vector<OracleRange> oracle_encode(const GrayImage& img, const CodecParams& params) {
  const CodecParams p = params.normalized();
  std::vector<OracleRange> out;
  for (int y = 0; y + p.n <= img.height; y += p.n)
    for (int x = 0; x + p.n <= img.width; x += p.n) out.push_back(oracle_encode_range(img, x, y, p));
  return out;
}

inline bool oracle_matches(const OracleCandidate& o, const RangeMapping& m) {
  return o.domain == m.domain && o.symmetry == m.symmetry && o.qs == m.qs && o.qo == m.qo &&
         o.residual == m.residual;  // exact, including the residual bits
}

}  // namespace fic::testing
