#include "fic/encoder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fic/codebook.hpp"
#include "fic/format.hpp"

namespace fic {

namespace {

struct FitSums {
  double n;  // pixel count
  double sa, sb, saa, sab;
  double den;  // N*Saa - Sa^2
  double num;  // N*Sab - Sa*Sb
};

FitSums gather_sums(const Block& a, const Block& b) {
  if (a.side != b.side)
    raise(Errc::SideMismatch, std::to_string(a.side) + " vs " + std::to_string(b.side));
  FitSums f{};
  f.n = static_cast<double>(a.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double av = a.samples[i];
    const double bv = b.samples[i];
    f.sa += av;
    f.sb += bv;
    f.saa += av * av;
    f.sab += av * bv;
  }
  f.den = f.n * f.saa - f.sa * f.sa;
  f.num = f.n * f.sab - f.sa * f.sb;
  return f;
}

// Residual of b ~ s*a + o, evaluated term by term in index order. The
// term order is part of the determinism contract: sequential encoder,
// parallel encoder, and any re-evaluation must accumulate identically.
double score_residual(const Block& a, const Block& b, double s, double o) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = s * a.samples[i] + o - b.samples[i];
    r += d * d;
  }
  return r;
}

}  // namespace

bool is_shadow(const Block& b, double eps) {
  double sum = 0.0, sum_sq = 0.0;
  for (double v : b.samples) {
    sum += v;
    sum_sq += v * v;
  }
  return static_cast<double>(b.samples.size()) * sum_sq - sum * sum <= eps;
}

LinearFit least_squares_fit(const Block& a, const Block& b, double shadow_eps) {
  const FitSums f = gather_sums(a, b);
  LinearFit fit;
  fit.s = f.den <= shadow_eps ? 0.0 : f.num / f.den;
  fit.o = (f.sb - fit.s * f.sa) / f.n;
  fit.residual = score_residual(a, b, fit.s, fit.o);
  return fit;
}

LinearFit least_squares_clamped(const Block& a, const Block& b, const CodecParams& params) {
  const CodecParams p = params.normalized();
  const FitSums f = gather_sums(a, b);
  LinearFit fit;
  fit.s = f.den <= p.shadow_eps ? 0.0 : std::clamp(f.num / f.den, -p.s_max, p.s_max);
  // Offset re-fitted for the (possibly clamped) scale, then held inside
  // the offset quantizer's range.
  fit.o = std::clamp((f.sb - fit.s * f.sa) / f.n, -255.0, 255.0);
  fit.residual = score_residual(a, b, fit.s, fit.o);
  return fit;
}

QuantizedFit least_squares(const Block& a, const Block& b, const CodecParams& params) {
  const CodecParams p = params.normalized();
  const LinearFit fit = least_squares_clamped(a, b, p);
  const UniformQuantizer sq = UniformQuantizer{p.s_bits, p.s_max};
  const UniformQuantizer oq = UniformQuantizer{p.o_bits, 255.0};
  QuantizedFit q;
  q.qs = sq.quantize(fit.s);
  q.qo = oq.quantize(fit.o);
  q.s = sq.dequantize(q.qs);
  q.o = oq.dequantize(q.qo);
  q.residual = score_residual(a, b, q.s, q.o);
  return q;
}

namespace {

// Pixel values are 8-bit and contracted cells are 2x2 group sums (<= 1020),
// so int16 holds every stored value; only the accumulators need width.
struct Scratch {
  std::vector<std::int16_t> range;       // range pixels, row-major
  std::vector<std::int16_t> bvariants;   // range pre-permuted per symmetry (see below)
  std::vector<std::int16_t> contracted;  // 2x2 group sums of the domain window (4x the sample)

  explicit Scratch(int pixel_count)
      : range(pixel_count), bvariants(static_cast<std::size_t>(kSymmetryCount) * pixel_count),
        contracted(pixel_count) {}
};

class Searcher {
 public:
  Searcher(const GrayImage& img, const CodecParams& params)
      : img_(img),
        p_(params),
        n_(params.n),
        count_(params.n * params.n),
        count_d_(static_cast<double>(params.n * params.n)),
        inv_count_(1.0 / count_d_),
        squant_{params.s_bits, params.s_max},
        oquant_{params.o_bits, 255.0} {
    // x outer, y inner: the canonical candidate order.
    for (int x = 0; x + 2 * n_ <= img.width; x += p_.step)
      for (int y = 0; y + 2 * n_ <= img.height; y += p_.step) positions_.push_back({x, y});
    if (positions_.empty()) raise(Errc::NoValidPositions, "no domain fits the image");

    perm_.resize(static_cast<std::size_t>(kSymmetryCount) * count_);
    inv_perm_.resize(perm_.size());
    for (int s = 0; s < kSymmetryCount; ++s) {
      for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
          const SourceCoord src = symmetry_source(static_cast<Symmetry>(s), r, c, n_);
          perm_[static_cast<std::size_t>(s) * count_ + r * n_ + c] = src.r * n_ + src.c;
        }
      for (int i = 0; i < count_; ++i)
        inv_perm_[static_cast<std::size_t>(s) * count_ + perm_[s * count_ + i]] = i;
    }
  }

  int pixel_count() const { return count_; }

  RangeMapping search(int x0, int y0, Scratch& scratch, EncodeStats& stats) const {
    if (n_ == 4) return search_impl<4>(x0, y0, scratch, stats);
    return search_impl<0>(x0, y0, scratch, stats);
  }

 private:
  // kN pins the block side at compile time for the common case so the
  // count-bound loops unroll and vectorize; kN == 0 is the generic path.
  // Both paths do identical integer arithmetic (exact either way) and share
  // the float expressions, so results are bit-identical.
  template <int kN>
  RangeMapping search_impl(int x0, int y0, Scratch& scratch, EncodeStats& stats) const {
    const int n = kN > 0 ? kN : n_;
    const int count = n * n;
    using Acc = std::conditional_t<kN == 4, std::int32_t, std::int64_t>;

    std::int16_t* const rb = scratch.range.data();
    Acc sum_b = 0, sum_bb = 0;
    for (int r = 0; r < n; ++r) {
      const std::uint8_t* row = &img_.data[static_cast<std::size_t>(y0 + r) * img_.width + x0];
      for (int c = 0; c < n; ++c) {
        const int v = row[c];
        rb[r * n + c] = static_cast<std::int16_t>(v);
        sum_b += v;
        sum_bb += v * v;
      }
    }
    const std::int64_t range_var =
        static_cast<std::int64_t>(count) * sum_bb - static_cast<std::int64_t>(sum_b) * sum_b;
    if (static_cast<double>(range_var) <= p_.shadow_eps) {
      ++stats.shadow_ranges;
      return flat_mapping(rb, sum_b);
    }

    // Pre-permute the range once per search: sum_i q[perm(i)] * b[i] equals
    // sum_j q[j] * b[inv_perm(j)], which turns every symmetry's correlation
    // into a contiguous dot product.
    std::int16_t* const bv = scratch.bvariants.data();
    for (int s = 0; s < kSymmetryCount; ++s) {
      const int* ip = &inv_perm_[static_cast<std::size_t>(s) * count];
      for (int i = 0; i < count; ++i) bv[s * count + i] = rb[ip[i]];
    }

    const double ssb = static_cast<double>(range_var) / count_d_;  // Sbb - Sb^2/N
    const double sb_d = static_cast<double>(sum_b);

    RangeMapping best;
    double best_r = std::numeric_limits<double>::infinity();
    // Gate precomputation: a candidate can only beat best_r when its
    // unconstrained-fit residual ssb - num^2/den is strictly below it,
    // i.e. num^2 > (ssb - best_r) * den. Comparing products avoids a
    // divide per candidate.
    double gate = -std::numeric_limits<double>::infinity();  // ssb - best_r
    bool found = false;
    std::int16_t* const q = scratch.contracted.data();

    for (const DomainPosition& pos : positions_) {
      // Contract the 2n x 2n window: each cell keeps the integer 2x2 group
      // sum, i.e. 4x the real sample, so every sum below stays exact.
      Acc sum_q = 0, sum_qq = 0;
      for (int r = 0; r < n; ++r) {
        const std::uint8_t* row0 =
            &img_.data[static_cast<std::size_t>(pos.y + 2 * r) * img_.width + pos.x];
        const std::uint8_t* row1 = row0 + img_.width;
        for (int c = 0; c < n; ++c) {
          const int v = row0[2 * c] + row0[2 * c + 1] + row1[2 * c] + row1[2 * c + 1];
          q[r * n + c] = static_cast<std::int16_t>(v);
          sum_q += v;
          sum_qq += v * v;
        }
      }
      // 16 * (N*Saa - Sa^2) in real sample units.
      const std::int64_t den_q =
          static_cast<std::int64_t>(count) * sum_qq - static_cast<std::int64_t>(sum_q) * sum_q;
      if (static_cast<double>(den_q) <= 16.0 * p_.shadow_eps) {
        // Zero-variance code block: only reachable through s=0, which the
        // shadow/degenerate branch already covers. Skipped for non-shadow
        // ranges.
        stats.shadow_codeblocks += kSymmetryCount;
        continue;
      }
      const double den_d = static_cast<double>(den_q);
      const double sa_d = static_cast<double>(sum_q) * 0.25;
      const std::int64_t sqsb = static_cast<std::int64_t>(sum_q) * sum_b;
      double gate_den = gate * den_d;
      stats.candidates_tested += kSymmetryCount;

      for (int sym = 0; sym < kSymmetryCount; ++sym) {
        const std::int16_t* b_s = &bv[sym * count];
        Acc sum_qb = 0;
        for (int i = 0; i < count; ++i)
          sum_qb += static_cast<int>(q[i]) * static_cast<int>(b_s[i]);
        const std::int64_t num_q = static_cast<std::int64_t>(count) * sum_qb - sqsb;
        const double num_d = static_cast<double>(num_q);
        // The unconstrained fit bounds every candidate from below: no clamp
        // or quantizer choice scores better, so anything at or above the
        // incumbent is settled without full evaluation.
        if (num_d * num_d <= gate_den) continue;

        const double s_raw = 4.0 * num_d / den_d;
        const double s = std::clamp(s_raw, -p_.s_max, p_.s_max);
        const std::uint32_t qs = squant_.quantize(s);
        const double s_deq = squant_.dequantize(qs);

        // In exact arithmetic the realized residual decomposes as
        //   R(s', o') = ssb - 2 s' cov + s'^2 var_a + N (o' - o*(s'))^2.
        // Both screens below are that identity evaluated left to right
        // (the first one drops the non-negative offset term), so they
        // equal the exact loop up to float noise; the margin covers the
        // noise, and survivors get the exact term-by-term evaluation
        // that decides and stores the mapping.
        const double cov = num_d * 0.25 * inv_count_;
        const double var_a = den_d * 0.0625 * inv_count_;
        const double parabola = ssb - 2.0 * s_deq * cov + s_deq * s_deq * var_a;
        if (parabola >= best_r + 1e-3) continue;

        // Multiplying by inv_count_ is an exact power-of-two scaling,
        // bit-identical to dividing by the pixel count.
        const double o = std::clamp((sb_d - s * sa_d) * inv_count_, -255.0, 255.0);
        const std::uint32_t qo = oquant_.quantize(o);
        const double o_deq = oquant_.dequantize(qo);
        const double o_gap = o_deq - (sb_d - s_deq * sa_d) * inv_count_;
        const double screen = parabola + count_d_ * o_gap * o_gap;
        if (screen >= best_r + 1e-3) continue;

        const int* pm = &perm_[static_cast<std::size_t>(sym) * count];
        double r_val = 0.0;
        for (int i = 0; i < count; ++i) {
          const double ai = static_cast<double>(q[pm[i]]) * 0.25;
          const double d = s_deq * ai + o_deq - static_cast<double>(rb[i]);
          r_val += d * d;
        }
        if (r_val < best_r) {
          best_r = r_val;
          best = RangeMapping{pos, static_cast<Symmetry>(sym), qs, qo, r_val};
          found = true;
          gate = ssb - best_r;
          gate_den = gate * den_d;
        }
      }
    }

    if (!found) {
      // Every candidate was flat; fall back to the degenerate fit.
      return flat_mapping(rb, sum_b);
    }
    return best;
  }

  RangeMapping flat_mapping(const std::int16_t* rb, std::int64_t sum_b) const {
    const double o = static_cast<double>(sum_b) / count_d_;
    const std::uint32_t qo = oquant_.quantize(o);
    const double o_deq = oquant_.dequantize(qo);
    double r_val = 0.0;
    for (int i = 0; i < count_; ++i) {
      const double d = o_deq - static_cast<double>(rb[i]);
      r_val += d * d;
    }
    return RangeMapping{DomainPosition{0, 0}, Symmetry::Identity, 0, qo, r_val};
  }

  const GrayImage& img_;
  const CodecParams p_;
  const int n_;
  const int count_;
  const double count_d_;
  const double inv_count_;
  const UniformQuantizer squant_;
  const UniformQuantizer oquant_;
  std::vector<DomainPosition> positions_;
  std::vector<int> perm_;
  std::vector<int> inv_perm_;
};

void check_range_origin(const GrayImage& img, int x, int y, const CodecParams& p) {
  if (x % p.n != 0 || y % p.n != 0 || x < 0 || y < 0 || x + p.n > img.width ||
      y + p.n > img.height)
    raise(Errc::GeometryError,
          "range origin (" + std::to_string(x) + ", " + std::to_string(y) + ") not on the grid");
}

}  // namespace

RangeMapping encode_range(const GrayImage& img, int x, int y, const CodecParams& params,
                          EncodeStats* stats) {
  const CodecParams p = params.normalized();
  check_range_origin(img, x, y, p);
  Searcher searcher(img, p);
  Scratch scratch(searcher.pixel_count());
  EncodeStats local;
  RangeMapping m = searcher.search(x, y, scratch, local);
  if (stats) *stats = local;
  return m;
}

EncodedImage encode_sequential(const GrayImage& img, const CodecParams& params,
                               EncodeStats* stats) {
  const CodecParams p = params.normalized();
  validate_geometry(img, p);
  Searcher searcher(img, p);
  Scratch scratch(searcher.pixel_count());
  EncodeStats local;

  EncodedImage enc;
  enc.width = img.width;
  enc.height = img.height;
  enc.params = p;
  const int ranges_x = img.width / p.n;
  const int ranges_y = img.height / p.n;
  enc.mappings.resize(static_cast<std::size_t>(ranges_x) * ranges_y);
  for (int ry = 0; ry < ranges_y; ++ry)
    for (int rx = 0; rx < ranges_x; ++rx)
      enc.mappings[static_cast<std::size_t>(ry) * ranges_x + rx] =
          searcher.search(rx * p.n, ry * p.n, scratch, local);

  if (stats) *stats = local;
  return enc;
}

EncodedImage encode_parallel(const GrayImage& img, const CodecParams& params, int workers,
                             ChunkGeometry chunk, EncodeStats* stats) {
  const CodecParams p = params.normalized();
  validate_geometry(img, p);
  if (workers < 1) raise(Errc::BadParams, "workers must be >= 1");
  if (chunk.w < 1 || chunk.h < 1) raise(Errc::BadParams, "chunk geometry must be >= 1x1");

  Searcher searcher(img, p);
  EncodedImage enc;
  enc.width = img.width;
  enc.height = img.height;
  enc.params = p;
  const int ranges_x = img.width / p.n;
  const int ranges_y = img.height / p.n;
  enc.mappings.resize(static_cast<std::size_t>(ranges_x) * ranges_y);

  const int chunks_x = (ranges_x + chunk.w - 1) / chunk.w;
  const int chunks_y = (ranges_y + chunk.h - 1) / chunk.h;
  const int total_chunks = chunks_x * chunks_y;

  std::atomic<int> next_chunk{0};
  std::mutex merge_mutex;
  EncodeStats total;
  std::exception_ptr first_error;

  auto run_worker = [&]() {
    Scratch scratch(searcher.pixel_count());
    EncodeStats local;
    try {
      for (;;) {
        const int ci = next_chunk.fetch_add(1, std::memory_order_relaxed);
        if (ci >= total_chunks) break;
        const int cx = ci % chunks_x;
        const int cy = ci / chunks_x;
        const int ry_end = std::min((cy + 1) * chunk.h, ranges_y);
        const int rx_end = std::min((cx + 1) * chunk.w, ranges_x);
        for (int ry = cy * chunk.h; ry < ry_end; ++ry)
          for (int rx = cx * chunk.w; rx < rx_end; ++rx)
            enc.mappings[static_cast<std::size_t>(ry) * ranges_x + rx] =
                searcher.search(rx * p.n, ry * p.n, scratch, local);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge_mutex);
      if (!first_error) first_error = std::current_exception();
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    total.candidates_tested += local.candidates_tested;
    total.shadow_ranges += local.shadow_ranges;
    total.shadow_codeblocks += local.shadow_codeblocks;
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(run_worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  if (stats) *stats = total;
  return enc;
}

}  // namespace fic
