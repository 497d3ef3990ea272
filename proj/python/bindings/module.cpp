#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>

#include "fic/decoder.hpp"
#include "fic/encoder.hpp"
#include "fic/format.hpp"
#include "fic/image.hpp"
#include "fic/metrics.hpp"

namespace py = pybind11;
using namespace fic;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GrayImage image_from_array(const U8Array& arr) {
  if (arr.ndim() != 2) throw py::value_error("expected a 2D uint8 array (height x width)");
  GrayImage img;
  img.height = static_cast<int>(arr.shape(0));
  img.width = static_cast<int>(arr.shape(1));
  img.data.assign(arr.data(), arr.data() + img.pixel_count());
  return img;
}

py::array_t<std::uint8_t> array_from_image(const GrayImage& img) {
  py::array_t<std::uint8_t> arr({img.height, img.width});
  std::memcpy(arr.mutable_data(), img.data.data(), img.data.size());
  return arr;
}

ChunkGeometry chunk_from_tuple(const std::pair<int, int>& chunk) {
  return ChunkGeometry{chunk.first, chunk.second};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fractal image codec: PIFS block-matching encoder and iterative decoder";

  py::register_exception<CodecError>(m, "CodecError");

  py::class_<CodecParams>(m, "CodecParams")
      .def(py::init([](int n, int step, int s_bits, int o_bits, double s_max, double shadow_eps) {
             CodecParams p;
             p.n = n;
             p.step = step;
             p.s_bits = s_bits;
             p.o_bits = o_bits;
             p.s_max = s_max;
             p.shadow_eps = shadow_eps;
             return p.normalized();
           }),
           py::arg("n") = 4, py::arg("step") = 0, py::arg("s_bits") = 5, py::arg("o_bits") = 7,
           py::arg("s_max") = 1.0, py::arg("shadow_eps") = 0.0,
           "step=0 means the grid spacing tracks n")
      .def_readonly("n", &CodecParams::n)
      .def_readonly("step", &CodecParams::step)
      .def_readonly("s_bits", &CodecParams::s_bits)
      .def_readonly("o_bits", &CodecParams::o_bits)
      .def_readonly("s_max", &CodecParams::s_max)
      .def_readonly("shadow_eps", &CodecParams::shadow_eps)
      .def("__repr__", [](const CodecParams& p) {
        return "CodecParams(n=" + std::to_string(p.n) + ", step=" + std::to_string(p.step) +
               ", s_bits=" + std::to_string(p.s_bits) + ", o_bits=" + std::to_string(p.o_bits) +
               ", s_max=" + std::to_string(p.s_max) + ")";
      });

  py::class_<EncodedImage>(m, "EncodedImage")
      .def_readonly("width", &EncodedImage::width)
      .def_readonly("height", &EncodedImage::height)
      .def_readonly("params", &EncodedImage::params)
      .def_property_readonly(
          "mapping_count", [](const EncodedImage& e) { return e.mappings.size(); })
      .def("serialize",
           [](const EncodedImage& e) {
             const auto bytes = serialize(e);
             return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
           })
      .def_static("deserialize", [](const py::bytes& data) {
        std::string_view view = data;
        return deserialize(std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(view.data()), view.size()));
      })
      .def("__repr__", [](const EncodedImage& e) {
        return "EncodedImage(" + std::to_string(e.width) + "x" + std::to_string(e.height) + ", " +
               std::to_string(e.mappings.size()) + " mappings)";
      });

  m.def(
      "encode",
      [](const U8Array& image, const CodecParams& params, int workers,
         const std::pair<int, int>& chunk) {
        const GrayImage img = image_from_array(image);
        const ChunkGeometry c = chunk_from_tuple(chunk);
        py::gil_scoped_release release;
        return workers > 1 ? encode_parallel(img, params, workers, c)
                           : encode_sequential(img, params);
      },
      py::arg("image"), py::arg("params") = CodecParams{}, py::arg("workers") = 1,
      py::arg("chunk") = std::make_pair(16, 16),
      "Full-search PIFS encode of a 2D uint8 array; workers > 1 uses the "
      "deterministic parallel encoder (identical output).");

  m.def(
      "decode",
      [](const EncodedImage& enc, int scale, int iterations, const py::object& initial,
         std::optional<double> convergence_eps) {
        DecodeParams dp;
        dp.scale = scale;
        dp.iterations = iterations;
        dp.convergence_eps = convergence_eps;
        GrayImage supplied;
        if (py::isinstance<py::str>(initial)) {
          const auto name = initial.cast<std::string>();
          if (name == "mid-gray")
            dp.initial = InitialRaster::MidGray;
          else if (name == "black")
            dp.initial = InitialRaster::Black;
          else
            throw py::value_error("initial must be 'mid-gray', 'black', or an array");
        } else {
          supplied = image_from_array(initial.cast<U8Array>());
          dp.initial = InitialRaster::Supplied;
          dp.supplied = &supplied;
        }
        GrayImage out;
        {
          py::gil_scoped_release release;
          out = decode(enc, dp);
        }
        return array_from_image(out);
      },
      py::arg("enc"), py::arg("scale") = 1, py::arg("iterations") = 16,
      py::arg("initial") = "mid-gray", py::arg("convergence_eps") = py::none(),
      "Iterative decode at an integer magnification factor.");

  m.def(
      "load_pgm",
      [](const py::bytes& data) {
        std::string_view view = data;
        return array_from_image(load_pgm(std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(view.data()), view.size())));
      },
      py::arg("data"), "Parse a P5/P2 PGM byte string into a 2D uint8 array.");

  m.def(
      "write_pgm",
      [](const U8Array& image) {
        const auto bytes = write_pgm(image_from_array(image));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("image"), "Serialize a 2D uint8 array as binary P5.");

  m.def(
      "validate_geometry",
      [](const U8Array& image, const CodecParams& params) {
        validate_geometry(image_from_array(image), params);
      },
      py::arg("image"), py::arg("params") = CodecParams{});

  m.def(
      "collage_error",
      [](const U8Array& image, const EncodedImage& enc) {
        return collage_error(image_from_array(image), enc);
      },
      py::arg("image"), py::arg("enc"),
      "RMSE between the image and one application of the stored transform.");

  m.def("decoded_error_bound", &decoded_error_bound, py::arg("collage_rmse"), py::arg("s_max"));

  m.def(
      "rmse",
      [](const U8Array& a, const U8Array& b) {
        return rmse(image_from_array(a), image_from_array(b));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "psnr",
      [](const U8Array& a, const U8Array& b) {
        return psnr(image_from_array(a), image_from_array(b));
      },
      py::arg("a"), py::arg("b"), "20*log10(255/rmse); inf for identical images.");
}
