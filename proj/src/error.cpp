#include "fic/error.hpp"

namespace fic {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::UnsupportedMaxval: return "UnsupportedMaxval";
    case Errc::TruncatedData: return "TruncatedData";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotPowerOfTwo: return "NotPowerOfTwo";
    case Errc::IndivisibleByRange: return "IndivisibleByRange";
    case Errc::TooSmallForDomain: return "TooSmallForDomain";
    case Errc::OddSide: return "OddSide";
    case Errc::SideMismatch: return "SideMismatch";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::NoValidPositions: return "NoValidPositions";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::GeometryError: return "GeometryError";
    case Errc::ScaleMismatch: return "ScaleMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonContractive: return "NonContractive";
    case Errc::BadParams: return "BadParams";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

namespace {
std::string format_message(Errc code, const std::string& detail) {
  std::string msg = errc_name(code);
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}
}  // namespace

CodecError::CodecError(Errc code, const std::string& detail)
    : std::runtime_error(format_message(code, detail)), code_(code) {}

void raise(Errc code, const std::string& detail) {
  throw CodecError(code, detail);
}

}  // namespace fic
