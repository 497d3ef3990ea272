"""Fractal image codec: PIFS block-matching encoder and iterative decoder."""

from ._core import (
    CodecError,
    CodecParams,
    EncodedImage,
    collage_error,
    decode,
    decoded_error_bound,
    encode,
    load_pgm,
    psnr,
    rmse,
    validate_geometry,
    write_pgm,
)

__all__ = [
    "CodecError",
    "CodecParams",
    "EncodedImage",
    "collage_error",
    "decode",
    "decoded_error_bound",
    "encode",
    "load_pgm",
    "psnr",
    "rmse",
    "validate_geometry",
    "write_pgm",
]
