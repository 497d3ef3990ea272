#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fic/format.hpp"
#include "fic/image.hpp"

namespace fic::bench {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string chunk_label(const ChunkGeometry& c) {
  return std::to_string(c.w) + "x" + std::to_string(c.h);
}

void write_csv(const std::string& path, const std::vector<BenchRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) raise(Errc::IoError, "cannot open " + path + " for writing");
  out << kCsvHeader << "\n";
  char line[256];
  for (const BenchRecord& r : records) {
    std::snprintf(line, sizeof(line), "%s,%d,%s,%d,%s,%.3f,%.4f,%.3f", r.image.c_str(), r.side,
                  r.impl.c_str(), r.workers, r.chunk.c_str(), r.encode_ms, r.speedup,
                  r.size_reduction_pct);
    out << line << "\n";
  }
}

}  // namespace

std::vector<BenchRecord> run_bench(const std::string& corpus_dir, const BenchConfig& config,
                                   std::ostream& table_out) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir)) raise(Errc::IoError, corpus_dir + " is not a directory");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) raise(Errc::IoError, "no .pgm files in " + corpus_dir);

  std::vector<BenchRecord> records;
  char line[256];
  std::snprintf(line, sizeof(line), "%-20s %6s %-10s %7s %-7s %12s %8s %10s", "image", "side",
                "impl", "workers", "chunk", "encode_ms", "speedup", "reduction%");
  table_out << line << "\n";

  for (const fs::path& file : files) {
    try {
      const GrayImage img = read_pgm_file(file.string());
      if (!config.sizes.empty() &&
          std::find(config.sizes.begin(), config.sizes.end(), img.width) == config.sizes.end())
        continue;
      validate_geometry(img, config.params);
      const std::string name = file.filename().string();
      const std::size_t raw_bytes = img.pixel_count();

      double seq_ms = 1e300;
      EncodedImage seq_enc;
      for (int rep = 0; rep < config.repeats; ++rep) {
        const double t0 = now_ms();
        seq_enc = encode_sequential(img, config.params);
        seq_ms = std::min(seq_ms, now_ms() - t0);
      }
      const auto seq_bytes = serialize(seq_enc);
      const double reduction = size_reduction_pct(seq_enc, raw_bytes);

      auto emit = [&](const BenchRecord& r) {
        std::snprintf(line, sizeof(line), "%-20s %6d %-10s %7d %-7s %12.3f %8.4f %10.3f",
                      r.image.c_str(), r.side, r.impl.c_str(), r.workers, r.chunk.c_str(),
                      r.encode_ms, r.speedup, r.size_reduction_pct);
        table_out << line << "\n";
        records.push_back(r);
      };

      for (int workers : config.workers) {
        if (workers <= 1) {
          emit({name, img.width, "sequential", 1, "-", seq_ms, 1.0, reduction});
          continue;
        }
        for (const ChunkGeometry& chunk : config.chunks) {
          try {
            // Correctness first: the parallel path must reproduce the
            // sequential file byte for byte before its timing counts.
            if (serialize(encode_parallel(img, config.params, workers, chunk)) != seq_bytes)
              raise(Errc::BadParams, "parallel output diverged from sequential");
            double par_ms = 1e300;
            for (int rep = 0; rep < config.repeats; ++rep) {
              const double t0 = now_ms();
              encode_parallel(img, config.params, workers, chunk);
              par_ms = std::min(par_ms, now_ms() - t0);
            }
            emit({name, img.width, "parallel", workers, chunk_label(chunk), par_ms,
                  seq_ms / par_ms, reduction});
          } catch (const std::exception& e) {
            table_out << "# " << name << " workers=" << workers << " chunk=" << chunk_label(chunk)
                      << " failed: " << e.what() << "\n";
          }
        }
      }
    } catch (const std::exception& e) {
      table_out << "# " << file.filename().string() << " skipped: " << e.what() << "\n";
    }
  }

  write_csv(config.csv_path, records);
  return records;
}

}  // namespace fic::bench
