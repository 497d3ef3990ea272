#pragma once

#include <stdexcept>
#include <string>

namespace fic {

// Every failure mode the codec reports. CLI and bindings surface the
// enum name verbatim, so names are part of the tool's contract.
enum class Errc {
  MalformedHeader,
  UnsupportedMaxval,
  TruncatedData,
  NotSquare,
  NotPowerOfTwo,
  IndivisibleByRange,
  TooSmallForDomain,
  OddSide,
  SideMismatch,
  OutOfBounds,
  NoValidPositions,
  OutOfRange,
  GeometryError,
  ScaleMismatch,
  DimensionMismatch,
  NonContractive,
  BadParams,
  IoError,
};

const char* errc_name(Errc code);

class CodecError : public std::runtime_error {
 public:
  CodecError(Errc code, const std::string& detail);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& detail = {});

}  // namespace fic
