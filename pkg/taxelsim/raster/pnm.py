"""Portable anymap input: P1/P4 bitmaps and P2/P5 graymaps.

PBM 1 is black, which raises the taxel. Graymaps with a maxval other than
255 are rescaled to 8 bits; P5 with maxval > 255 carries big-endian 16-bit
samples.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from taxelsim.raster.image import GrayImage
from taxelsim.taxel.model import Bitmap
from taxelsim.utils.exceptions import (
    MalformedHeaderError,
    RasterError,
    TruncatedDataError,
    UnsupportedMagicError,
)

logger = logging.getLogger(__name__)

_WHITESPACE = b" \t\r\n\v\f"
_MAGICS = (b"P1", b"P2", b"P4", b"P5")


class _Reader:
    """Token reader over PNM bytes that skips whitespace and ``#`` comments."""

    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def _skip_space(self) -> None:
        data = self.data
        while self.pos < len(data):
            byte = data[self.pos : self.pos + 1]
            if byte == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif byte in _WHITESPACE:
                self.pos += 1
            else:
                return

    def token(self, what: str) -> bytes:
        self._skip_space()
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos : self.pos + 1] not in (
            _WHITESPACE + b"#"
        ):
            self.pos += 1
        if start == self.pos:
            raise MalformedHeaderError(f"Missing {what}", details={"offset": start})
        return self.data[start : self.pos]

    def header_int(self, what: str, low: int, high: int) -> int:
        raw = self.token(what)
        if not raw.isdigit():
            raise MalformedHeaderError(f"Invalid {what}: {raw!r}", details={"field": what})
        value = int(raw)
        if not low <= value <= high:
            raise MalformedHeaderError(
                f"{what} {value} outside [{low}, {high}]", details={"field": what}
            )
        return value

    def end_of_header(self) -> None:
        """Binary rasters start after exactly one whitespace byte."""
        if self.pos >= len(self.data) or self.data[self.pos : self.pos + 1] not in _WHITESPACE:
            raise MalformedHeaderError("Header must end with a whitespace byte")
        self.pos += 1

    def rest(self) -> bytes:
        return self.data[self.pos :]


def _rescale(samples: np.ndarray, maxval: int) -> np.ndarray:
    if maxval == 255:
        return samples.astype(np.uint8)
    wide = samples.astype(np.int64)
    # round(v * 255 / maxval), half up, in integers
    return ((wide * 510 + maxval) // (2 * maxval)).astype(np.uint8)


def _plain_bits(reader: _Reader, width: int, height: int) -> Bitmap:
    bits: list[bool] = []
    wanted = width * height
    while len(bits) < wanted:
        reader._skip_space()
        if reader.pos >= len(reader.data):
            raise TruncatedDataError(
                f"P1 raster has {len(bits)} of {wanted} pixels",
                details={"have": len(bits), "need": wanted},
            )
        char = reader.data[reader.pos : reader.pos + 1]
        if char not in (b"0", b"1"):
            raise RasterError(f"Invalid P1 pixel {char!r}", details={"offset": reader.pos})
        bits.append(char == b"1")
        reader.pos += 1
    return Bitmap.from_array(np.array(bits, dtype=bool).reshape(height, width))


def _raw_bits(reader: _Reader, width: int, height: int) -> Bitmap:
    reader.end_of_header()
    stride = (width + 7) // 8
    raw = reader.rest()
    if len(raw) < stride * height:
        raise TruncatedDataError(
            f"P4 raster has {len(raw)} of {stride * height} bytes",
            details={"have": len(raw), "need": stride * height},
        )
    packed = np.frombuffer(raw[: stride * height], dtype=np.uint8).reshape(height, stride)
    return Bitmap.from_array(np.unpackbits(packed, axis=1)[:, :width])


def _plain_gray(reader: _Reader, width: int, height: int, maxval: int) -> GrayImage:
    samples: list[int] = []
    wanted = width * height
    while len(samples) < wanted:
        reader._skip_space()
        if reader.pos >= len(reader.data):
            raise TruncatedDataError(
                f"P2 raster has {len(samples)} of {wanted} samples",
                details={"have": len(samples), "need": wanted},
            )
        raw = reader.token("sample")
        if not raw.isdigit() or int(raw) > maxval:
            raise RasterError(f"Invalid P2 sample {raw!r}", details={"maxval": maxval})
        samples.append(int(raw))
    arr = np.array(samples, dtype=np.int64).reshape(height, width)
    return GrayImage(_rescale(arr, maxval))


def _raw_gray(reader: _Reader, width: int, height: int, maxval: int) -> GrayImage:
    reader.end_of_header()
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    need = width * height * dtype.itemsize
    raw = reader.rest()
    if len(raw) < need:
        raise TruncatedDataError(
            f"P5 raster has {len(raw)} of {need} bytes", details={"have": len(raw), "need": need}
        )
    arr = np.frombuffer(raw[:need], dtype=dtype).reshape(height, width)
    if int(arr.max()) > maxval:
        raise RasterError("P5 sample exceeds maxval", details={"maxval": maxval})
    return GrayImage(_rescale(arr, maxval))


def load_pbm(data: bytes) -> Bitmap | GrayImage:
    """Parse a P1, P2, P4 or P5 image.

    Returns:
        A :class:`Bitmap` for P1/P4, a :class:`GrayImage` for P2/P5.

    Raises:
        UnsupportedMagicError: any other magic number.
        MalformedHeaderError: bad width, height or maxval.
        TruncatedDataError: fewer pixels than the header announces.
    """
    magic = data[:2]
    if magic not in _MAGICS:
        raise UnsupportedMagicError(
            f"Unsupported image type {magic!r}", details={"magic": magic.decode("latin-1")}
        )
    reader = _Reader(data)
    reader.pos = 2
    width = reader.header_int("width", 1, 1 << 16)
    height = reader.header_int("height", 1, 1 << 16)
    logger.debug(f"PNM {magic.decode()} {width}x{height}")

    if magic == b"P1":
        return _plain_bits(reader, width, height)
    if magic == b"P4":
        return _raw_bits(reader, width, height)

    maxval = reader.header_int("maxval", 1, 65535)
    if magic == b"P2":
        return _plain_gray(reader, width, height, maxval)
    return _raw_gray(reader, width, height, maxval)


def load_pbm_file(path: str | Path) -> Bitmap | GrayImage:
    return load_pbm(Path(path).expanduser().read_bytes())
