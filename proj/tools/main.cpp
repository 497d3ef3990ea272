#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bench.hpp"
#include "fic/decoder.hpp"
#include "fic/encoder.hpp"
#include "fic/format.hpp"
#include "fic/image.hpp"
#include "fic/metrics.hpp"

namespace {

using namespace fic;

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

ChunkGeometry parse_chunk(const std::string& text) {
  ChunkGeometry c;
  const auto sep = text.find('x');
  try {
    if (sep == std::string::npos) {
      c.w = c.h = std::stoi(text);
    } else {
      c.w = std::stoi(text.substr(0, sep));
      c.h = std::stoi(text.substr(sep + 1));
    }
  } catch (const std::exception&) {
    raise(Errc::BadParams, "chunk '" + text + "' is not WxH");
  }
  if (c.w < 1 || c.h < 1) raise(Errc::BadParams, "chunk '" + text + "' must be at least 1x1");
  return c;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      if (!item.empty()) out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      raise(Errc::BadParams, std::string(what) + " list entry '" + item + "' is not an integer");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) raise(Errc::BadParams, std::string("empty ") + what + " list");
  return out;
}

int cmd_encode(const std::string& in_path, const std::string& out_path, CodecParams params,
               int workers, const std::string& chunk_text) {
  const GrayImage img = read_pgm_file(in_path);
  validate_geometry(img, params);
  const ChunkGeometry chunk = parse_chunk(chunk_text);

  const double t0 = now_ms();
  const EncodedImage enc = workers > 1 ? encode_parallel(img, params, workers, chunk)
                                       : encode_sequential(img, params);
  const double elapsed = now_ms() - t0;

  const auto bytes = serialize(enc);
  write_binary_file(out_path, bytes);
  std::printf("encode_ms=%.3f\n", elapsed);
  std::printf("mappings=%zu\n", enc.mappings.size());
  std::printf("size_reduction_pct=%.3f\n", size_reduction_pct(enc, img.pixel_count()));
  std::printf("out_bytes=%zu\n", bytes.size());
  return 0;
}

int cmd_decode(const std::string& in_path, const std::string& out_path, int scale, int iterations,
               const std::string& initial, std::optional<double> eps) {
  const EncodedImage enc = deserialize(read_binary_file(in_path));
  DecodeParams dp;
  dp.scale = scale;
  dp.iterations = iterations;
  dp.convergence_eps = eps;
  GrayImage supplied;
  if (initial == "mid-gray") {
    dp.initial = InitialRaster::MidGray;
  } else if (initial == "black") {
    dp.initial = InitialRaster::Black;
  } else {
    supplied = read_pgm_file(initial);
    dp.initial = InitialRaster::Supplied;
    dp.supplied = &supplied;
  }
  const DecodeResult result = decode_traced(enc, dp);
  write_pgm_file(out_path, result.image);
  std::printf("iterations=%d\n", result.iterations_run);
  std::printf("width=%d\n", result.image.width);
  std::printf("height=%d\n", result.image.height);
  return 0;
}

int cmd_metrics(const std::string& a_path, const std::string& b_path) {
  const GrayImage a = read_pgm_file(a_path);
  const GrayImage b = read_pgm_file(b_path);
  const double e = rmse(a, b);
  const double p = psnr(a, b);
  std::printf("rmse=%.6f\n", e);
  if (std::isinf(p))
    std::printf("psnr=inf\n");
  else
    std::printf("psnr=%.4f\n", p);
  return 0;
}

int cmd_bench(const std::string& corpus_dir, bench::BenchConfig config,
              const std::string& workers_text, const std::string& chunks_text,
              const std::string& sizes_text) {
  config.workers = parse_int_list(workers_text, "workers");
  config.chunks.clear();
  std::size_t pos = 0;
  while (pos <= chunks_text.size()) {
    const auto comma = chunks_text.find(',', pos);
    const std::string item =
        chunks_text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!item.empty()) config.chunks.push_back(parse_chunk(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (config.chunks.empty()) raise(Errc::BadParams, "empty chunk list");
  if (!sizes_text.empty()) config.sizes = parse_int_list(sizes_text, "sizes");
  if (config.repeats < 1) raise(Errc::BadParams, "repeats must be >= 1");

  const auto records = bench::run_bench(corpus_dir, config, std::cout);
  std::printf("rows=%zu\n", records.size());
  std::printf("csv=%s\n", config.csv_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fic - fractal image codec (PIFS, grayscale PGM)"};
  app.require_subcommand(1);

  CodecParams params;
  int workers = 1;
  std::string chunk_text = "16x16";
  std::string in_path, out_path;

  CLI::App* encode = app.add_subcommand("encode", "Encode a PGM image to a FIC1 file");
  encode->add_option("input", in_path, "input .pgm")->required();
  encode->add_option("output", out_path, "output .fic")->required();
  encode->add_option("--n", params.n, "range block side (power of two)");
  encode->add_option("--step", params.step, "domain grid spacing (0 = n)");
  encode->add_option("--s-bits", params.s_bits, "scale quantizer width");
  encode->add_option("--o-bits", params.o_bits, "offset quantizer width");
  encode->add_option("--s-max", params.s_max, "scale clamp magnitude");
  encode->add_option("--shadow-eps", params.shadow_eps, "variance threshold for shadow blocks");
  encode->add_option("--workers", workers, "worker threads (1 = sequential)");
  encode->add_option("--chunk", chunk_text, "work-unit geometry in range blocks, WxH");

  int scale = 1, iterations = 16;
  std::string initial = "mid-gray";
  double eps = -1.0;
  CLI::App* decode = app.add_subcommand("decode", "Decode a FIC1 file to a PGM image");
  decode->add_option("input", in_path, "input .fic")->required();
  decode->add_option("output", out_path, "output .pgm")->required();
  decode->add_option("--scale", scale, "integer magnification factor");
  decode->add_option("--iterations", iterations, "decoder iterations");
  decode->add_option("--initial", initial, "mid-gray, black, or a PGM path");
  decode->add_option("--convergence-eps", eps, "early-stop RMSE delta (off if negative)");

  std::string a_path, b_path;
  CLI::App* metrics = app.add_subcommand("metrics", "RMSE and PSNR between two PGM images");
  metrics->add_option("a", a_path, "first .pgm")->required();
  metrics->add_option("b", b_path, "second .pgm")->required();

  std::string corpus_dir, workers_text = "1,4", chunks_text = "16x16", sizes_text;
  bench::BenchConfig bconfig;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark encoders over a PGM corpus");
  bench_cmd->add_option("corpus", corpus_dir, "directory of .pgm files")->required();
  bench_cmd->add_option("--sizes", sizes_text, "comma-separated side filter");
  bench_cmd->add_option("--workers-list", workers_text, "comma-separated worker counts");
  bench_cmd->add_option("--chunk-list", chunks_text, "comma-separated WxH chunk geometries");
  bench_cmd->add_option("--repeats", bconfig.repeats, "timing repetitions (minimum is kept)");
  bench_cmd->add_option("--csv", bconfig.csv_path, "CSV output path");
  bench_cmd->add_option("--n", bconfig.params.n, "range block side");
  bench_cmd->add_option("--step", bconfig.params.step, "domain grid spacing (0 = n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (encode->parsed()) return cmd_encode(in_path, out_path, params, workers, chunk_text);
    if (decode->parsed())
      return cmd_decode(in_path, out_path, scale, iterations, initial,
                        eps < 0 ? std::nullopt : std::optional<double>(eps));
    if (metrics->parsed()) return cmd_metrics(a_path, b_path);
    if (bench_cmd->parsed())
      return cmd_bench(corpus_dir, bconfig, workers_text, chunks_text, sizes_text);
  } catch (const CodecError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
