"""Core display types: grid geometry, frames, solenoid spec and physical state.

Orientation: row 0 is the top physical row, column 0 the leftmost column,
and a true bit means the plunger is Up (taxel raised).
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from taxelsim.utils.exceptions import DimensionMismatchError, ValidationError

COLUMN_PORT_WIDTH = 16


@dataclass(frozen=True, slots=True)
class GridDims:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValidationError(
                f"Grid dimensions must be positive, got {self.rows}x{self.cols}",
                field="dims",
                value=f"{self.rows}x{self.cols}",
            )

    @property
    def size(self) -> int:
        return self.rows * self.cols

    @property
    def row_bytes(self) -> int:
        """Bytes per row in the canonical serialization."""
        return (self.cols + 7) // 8

    @property
    def frame_bytes(self) -> int:
        return self.row_bytes * self.rows

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"


REFERENCE_DIMS = GridDims(16, 16)


@dataclass(frozen=True, slots=True)
class Bitmap:
    """Row-major boolean frame; ``bits[r * cols + c]`` is taxel (r, c)."""

    dims: GridDims
    bits: tuple[bool, ...]

    def __post_init__(self) -> None:
        if len(self.bits) != self.dims.size:
            raise ValidationError(
                f"Bitmap needs {self.dims.size} bits for {self.dims}, got {len(self.bits)}",
                field="bits",
            )

    @classmethod
    def blank(cls, dims: GridDims) -> Bitmap:
        return cls(dims, (False,) * dims.size)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[bool | int]]) -> Bitmap:
        if not rows:
            raise ValidationError("Bitmap needs at least one row", field="rows")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValidationError("Bitmap rows must all have the same length", field="rows")
        dims = GridDims(len(rows), width)
        return cls(dims, tuple(bool(bit) for row in rows for bit in row))

    @classmethod
    def from_coords(cls, dims: GridDims, coords: Iterable[tuple[int, int]]) -> Bitmap:
        bits = [False] * dims.size
        for row, col in coords:
            _check_coord(dims, row, col)
            bits[row * dims.cols + col] = True
        return cls(dims, tuple(bits))

    @classmethod
    def from_int(cls, dims: GridDims, value: int) -> Bitmap:
        """Bit i of ``value`` (LSB first) is row-major taxel i."""
        return cls(dims, tuple(bool((value >> i) & 1) for i in range(dims.size)))

    @classmethod
    def from_array(cls, array: npt.ArrayLike) -> Bitmap:
        arr = np.asarray(array, dtype=bool)
        if arr.ndim != 2:
            raise ValidationError(f"Expected a 2-D array, got {arr.ndim}-D", field="array")
        dims = GridDims(int(arr.shape[0]), int(arr.shape[1]))
        return cls(dims, tuple(bool(bit) for bit in arr.ravel()))

    @classmethod
    def from_bytes(cls, dims: GridDims, data: bytes) -> Bitmap:
        """Inverse of :meth:`to_bytes`. Padding bits in the last byte of a row are ignored."""
        if len(data) != dims.frame_bytes:
            raise DimensionMismatchError(dims.frame_bytes, len(data))
        bits: list[bool] = []
        for row in range(dims.rows):
            chunk = data[row * dims.row_bytes : (row + 1) * dims.row_bytes]
            for col in range(dims.cols):
                bits.append(bool(chunk[col // 8] & (0x80 >> (col % 8))))
        return cls(dims, tuple(bits))

    def to_bytes(self) -> bytes:
        """Canonical serialization: MSB = lowest column, rows top to bottom."""
        out = bytearray(self.dims.frame_bytes)
        for row in range(self.dims.rows):
            base = row * self.dims.row_bytes
            for col in range(self.dims.cols):
                if self.bits[row * self.dims.cols + col]:
                    out[base + col // 8] |= 0x80 >> (col % 8)
        return bytes(out)

    def to_array(self) -> npt.NDArray[np.bool_]:
        return np.array(self.bits, dtype=bool).reshape(self.dims.rows, self.dims.cols)

    def get(self, row: int, col: int) -> bool:
        _check_coord(self.dims, row, col)
        return self.bits[row * self.dims.cols + col]

    def row(self, row: int) -> tuple[bool, ...]:
        if not 0 <= row < self.dims.rows:
            raise ValidationError(f"Row {row} outside {self.dims}", field="row", value=row)
        return self.bits[row * self.dims.cols : (row + 1) * self.dims.cols]

    def row_is_clear(self, row: int) -> bool:
        return not any(self.row(row))

    def coords(self) -> list[tuple[int, int]]:
        cols = self.dims.cols
        return [divmod(i, cols) for i, bit in enumerate(self.bits) if bit]

    def popcount(self) -> int:
        return sum(self.bits)

    def complement(self) -> Bitmap:
        return Bitmap(self.dims, tuple(not bit for bit in self.bits))

    def is_clear(self) -> bool:
        return not any(self.bits)


def _check_coord(dims: GridDims, row: int, col: int) -> None:
    if not (0 <= row < dims.rows and 0 <= col < dims.cols):
        raise ValidationError(f"Coordinate ({row},{col}) outside {dims}", field="coord")


@dataclass(frozen=True, slots=True)
class SolenoidSpec:
    """Physical data of one latching solenoid (defaults: SC0323L-class part)."""

    width_mm: float = 7.0
    depth_mm: float = 8.4
    height_mm: float = 23.0
    mass_g: float = 6.0
    holding_force_g: float = 500.0
    coil_resistance_ohm: float = 24.0
    nominal_dc_voltage_v: float = 12.0
    response_time_s: float = 0.004

    def __post_init__(self) -> None:
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if not value > 0:
                raise ValidationError(
                    f"SolenoidSpec.{name} must be strictly positive",
                    field=name,
                    value=value,
                )


class Plunger(str, Enum):
    DOWN = "down"
    UP = "up"


@dataclass(frozen=True, slots=True)
class SolenoidState:
    plunger: Plunger = Plunger.DOWN
    temperature_c: float = 20.0
    set_pulse_count: int = 0
    reset_pulse_count: int = 0


class GridState:
    """Physical state of every taxel, held as parallel arrays.

    ``cell()`` and ``replace_cell()`` give the per-taxel :class:`SolenoidState`
    view; the arrays are what the circuit simulator updates in bulk.
    """

    def __init__(self, dims: GridDims, ambient_c: float) -> None:
        shape = (dims.rows, dims.cols)
        self.dims = dims
        self.raised: npt.NDArray[np.bool_] = np.zeros(shape, dtype=bool)
        self.temperature_c: npt.NDArray[np.float64] = np.full(shape, float(ambient_c))
        self.set_pulse_count: npt.NDArray[np.int64] = np.zeros(shape, dtype=np.int64)
        self.reset_pulse_count: npt.NDArray[np.int64] = np.zeros(shape, dtype=np.int64)

    def cell(self, row: int, col: int) -> SolenoidState:
        _check_coord(self.dims, row, col)
        return SolenoidState(
            plunger=Plunger.UP if self.raised[row, col] else Plunger.DOWN,
            temperature_c=float(self.temperature_c[row, col]),
            set_pulse_count=int(self.set_pulse_count[row, col]),
            reset_pulse_count=int(self.reset_pulse_count[row, col]),
        )

    def replace_cell(self, row: int, col: int, state: SolenoidState) -> None:
        _check_coord(self.dims, row, col)
        self.raised[row, col] = state.plunger is Plunger.UP
        self.temperature_c[row, col] = state.temperature_c
        self.set_pulse_count[row, col] = state.set_pulse_count
        self.reset_pulse_count[row, col] = state.reset_pulse_count

    def cells(self) -> list[SolenoidState]:
        """All cells, row-major."""
        return [self.cell(r, c) for r in range(self.dims.rows) for c in range(self.dims.cols)]

    def copy(self) -> GridState:
        clone = GridState.__new__(GridState)
        clone.dims = self.dims
        clone.raised = self.raised.copy()
        clone.temperature_c = self.temperature_c.copy()
        clone.set_pulse_count = self.set_pulse_count.copy()
        clone.reset_pulse_count = self.reset_pulse_count.copy()
        return clone

    def same_as(self, other: GridState) -> bool:
        return (
            self.dims == other.dims
            and np.array_equal(self.raised, other.raised)
            and np.array_equal(self.temperature_c, other.temperature_c)
            and np.array_equal(self.set_pulse_count, other.set_pulse_count)
            and np.array_equal(self.reset_pulse_count, other.reset_pulse_count)
        )

    @property
    def max_temperature_c(self) -> float:
        return float(self.temperature_c.max())


def new_grid(dims: GridDims, ambient_c: float = 20.0) -> GridState:
    """A grid with every plunger Down at ambient temperature and zero counters."""
    return GridState(dims, ambient_c)


def snapshot(grid: GridState) -> Bitmap:
    """Read back which taxels are raised."""
    return Bitmap(grid.dims, tuple(bool(bit) for bit in grid.raised.ravel()))


def bitmap_diff(a: Bitmap, b: Bitmap) -> list[tuple[int, int]]:
    """Coordinates where ``a`` and ``b`` differ, sorted row-major."""
    if a.dims != b.dims:
        raise DimensionMismatchError(a.dims, b.dims)
    cols = a.dims.cols
    return [divmod(i, cols) for i, (x, y) in enumerate(zip(a.bits, b.bits)) if x != y]
