"""Grayscale images and their reduction to display frames.

Polarity: 0 is black, 255 white, and dark pixels raise taxels.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from taxelsim.taxel.model import Bitmap, GridDims
from taxelsim.utils.exceptions import ValidationError

BAYER_4X4 = np.array(
    [
        [0, 8, 2, 10],
        [12, 4, 14, 6],
        [3, 11, 1, 9],
        [15, 7, 13, 5],
    ],
    dtype=np.float64,
)

# Bayer entry b raises a pixel darker than (b + 0.5) / 16 of full scale.
BAYER_THRESHOLDS = (BAYER_4X4 + 0.5) / 16.0 * 256.0


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale image; ``pixels`` has shape (height, width)."""

    pixels: npt.NDArray[np.uint8]

    def __post_init__(self) -> None:
        if self.pixels.ndim != 2 or 0 in self.pixels.shape:
            raise ValidationError(
                f"GrayImage needs a non-empty 2-D array, got shape {self.pixels.shape}",
                field="pixels",
            )
        if self.pixels.dtype != np.uint8:
            object.__setattr__(self, "pixels", self.pixels.astype(np.uint8))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> GrayImage:
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValidationError("Pixel intensities must be in [0, 255]", field="pixels")
        return cls(arr.astype(np.uint8))

    @classmethod
    def uniform(cls, width: int, height: int, value: int) -> GrayImage:
        if not 0 <= value <= 255:
            raise ValidationError("Intensity must be in [0, 255]", field="value", value=value)
        return cls(np.full((height, width), value, dtype=np.uint8))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def dims(self) -> GridDims:
        return GridDims(self.height, self.width)

    def mean(self) -> float:
        return float(self.pixels.mean())

    def inverted(self) -> GrayImage:
        return GrayImage(255 - self.pixels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


def _overlap_weights(source: int, target: int) -> npt.NDArray[np.float64]:
    """(target, source) matrix of how much of each source pixel falls in each output pixel."""
    scale = source / target
    lo = np.arange(target, dtype=np.float64)[:, None] * scale
    hi = lo + scale
    edges = np.arange(source, dtype=np.float64)[None, :]
    overlap = np.clip(np.minimum(hi, edges + 1.0) - np.maximum(lo, edges), 0.0, None)
    return overlap / overlap.sum(axis=1, keepdims=True)


def box_scale(img: GrayImage, target: GridDims) -> GrayImage:
    """Area-weighted box filter to ``target`` (rows = height), rounded half up."""
    if img.dims == target:
        return img
    rows = _overlap_weights(img.height, target.rows)
    cols = _overlap_weights(img.width, target.cols)
    means = rows @ img.pixels.astype(np.float64) @ cols.T
    # Tolerance keeps exact .5 means from rounding down after float summation.
    scaled = np.floor(means + 0.5 + 1e-9)
    return GrayImage(np.clip(scaled, 0, 255).astype(np.uint8))


def threshold(img: GrayImage, t: int) -> Bitmap:
    """Raise every taxel whose pixel is darker than ``t``."""
    if not 0 <= t <= 255:
        raise ValidationError("Threshold must be in [0, 255]", field="threshold", value=t)
    return Bitmap.from_array(img.pixels < t)


def ordered_dither(img: GrayImage) -> Bitmap:
    """4x4 Bayer ordered dither, the matrix tiled from the top-left pixel."""
    reps = (-(-img.height // 4), -(-img.width // 4))
    limits = np.tile(BAYER_THRESHOLDS, reps)[: img.height, : img.width]
    return Bitmap.from_array(img.pixels.astype(np.float64) < limits)


def bitmap_to_gray(frame: Bitmap) -> GrayImage:
    """Raised taxels become black pixels, lowered ones white."""
    return GrayImage(np.where(frame.to_array(), 0, 255).astype(np.uint8))


def invert(frame: Bitmap) -> Bitmap:
    return frame.complement()


def frame_from_text(text: str) -> Bitmap:
    """Parse a literal frame: rows separated by ``/``, ``,`` or newlines.

    ``1`` or ``#`` is a raised taxel, ``0`` or ``.`` a lowered one.
    """
    rows: list[list[bool]] = []
    for raw in text.replace(",", "/").replace("\n", "/").split("/"):
        line = raw.strip()
        if not line:
            continue
        row: list[bool] = []
        for char in line:
            if char in "1#":
                row.append(True)
            elif char in "0.":
                row.append(False)
            else:
                raise ValidationError(
                    f"Invalid frame character {char!r}", field="frame", value=char
                )
        rows.append(row)
    return Bitmap.from_rows(rows)
