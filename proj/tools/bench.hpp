#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fic/encoder.hpp"

namespace fic::bench {

struct BenchConfig {
  std::vector<int> sizes;              // empty = every corpus image
  std::vector<int> workers{1, 4};     // 1 selects the sequential row
  std::vector<ChunkGeometry> chunks{{16, 16}};
  int repeats = 3;
  std::string csv_path = "bench.csv";
  CodecParams params;
};

struct BenchRecord {
  std::string image;
  int side = 0;
  std::string impl;  // "sequential" or "parallel"
  int workers = 1;
  std::string chunk;  // "-" for the sequential row
  double encode_ms = 0.0;
  double speedup = 1.0;  // sequential_ms / encode_ms
  double size_reduction_pct = 0.0;
};

inline constexpr const char* kCsvHeader =
    "image,side,impl,workers,chunk,encode_ms,speedup,size_reduction_pct";

/// Benchmarks every PGM in corpus_dir (filtered by sizes): one sequential
/// baseline per image, then one parallel row per worker/chunk pair with
/// byte-equality asserted against the baseline before timing. Timings are
/// the minimum over `repeats` runs. Emits the CSV to config.csv_path and a
/// readable table to `table_out`. An image that fails to encode drops its
/// rows, not the run.
std::vector<BenchRecord> run_bench(const std::string& corpus_dir, const BenchConfig& config,
                                   std::ostream& table_out);

}  // namespace fic::bench
