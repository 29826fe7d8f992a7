"""Tests for grid geometry, frames and solenoid state."""

import numpy as np
import pytest

from taxelsim.taxel.model import (
    REFERENCE_DIMS,
    Bitmap,
    GridDims,
    GridState,
    Plunger,
    SolenoidSpec,
    SolenoidState,
    bitmap_diff,
    new_grid,
    snapshot,
)
from taxelsim.utils.exceptions import DimensionMismatchError, ValidationError


class TestGridDims:
    """Test GridDims."""

    def test_reference_dims(self):
        """The reference grid is 16x16 with 32 frame bytes."""
        assert REFERENCE_DIMS == GridDims(16, 16)
        assert REFERENCE_DIMS.size == 256
        assert REFERENCE_DIMS.frame_bytes == 32

    def test_row_bytes_round_up(self):
        """Rows are padded to whole bytes."""
        assert GridDims(3, 9).row_bytes == 2
        assert GridDims(3, 9).frame_bytes == 6
        assert GridDims(1, 1).frame_bytes == 1

    @pytest.mark.parametrize("rows,cols", [(0, 0), (0, 4), (4, 0), (-1, 3)])
    def test_rejects_non_positive(self, rows, cols):
        """Zero or negative dimensions are invalid."""
        with pytest.raises(ValidationError):
            GridDims(rows, cols)

    def test_str(self):
        """Dims print as RxC."""
        assert str(GridDims(4, 8)) == "4x8"


class TestBitmap:
    """Test Bitmap construction and serialization."""

    def test_blank_is_clear(self, dims16):
        """A blank frame has no raised taxels."""
        frame = Bitmap.blank(dims16)
        assert frame.is_clear()
        assert frame.popcount() == 0

    def test_wrong_bit_count_rejected(self, dims4):
        """The bit tuple must match the grid size."""
        with pytest.raises(ValidationError):
            Bitmap(dims4, (True,) * 15)

    def test_from_coords(self, dims4):
        """from_coords raises exactly the listed taxels."""
        frame = Bitmap.from_coords(dims4, [(0, 0), (3, 2)])
        assert frame.coords() == [(0, 0), (3, 2)]
        assert frame.get(3, 2)
        assert not frame.get(2, 3)

    def test_from_coords_out_of_range(self, dims4):
        """Coordinates outside the grid are rejected."""
        with pytest.raises(ValidationError):
            Bitmap.from_coords(dims4, [(4, 0)])

    def test_from_int_is_row_major_lsb_first(self):
        """Bit i of the integer is row-major taxel i."""
        frame = Bitmap.from_int(GridDims(2, 2), 0b0110)
        assert frame.coords() == [(0, 1), (1, 0)]

    def test_from_rows_ragged_rejected(self):
        """Rows of unequal length are rejected."""
        with pytest.raises(ValidationError):
            Bitmap.from_rows([[1, 0], [1]])

    def test_to_bytes_msb_is_lowest_column(self):
        """Column 0 is the most significant bit of the first row byte."""
        frame = Bitmap.from_coords(GridDims(2, 16), [(0, 0), (1, 15)])
        assert frame.to_bytes() == bytes([0x80, 0x00, 0x00, 0x01])

    def test_to_bytes_pads_short_rows(self):
        """A 9-column row takes two bytes, padding bits low."""
        frame = Bitmap.from_coords(GridDims(1, 9), [(0, 8)])
        assert frame.to_bytes() == bytes([0x00, 0x80])

    def test_from_bytes_inverse(self, dims16, random_frame):
        """from_bytes reads back what to_bytes wrote."""
        frame = random_frame(dims16)
        assert Bitmap.from_bytes(dims16, frame.to_bytes()) == frame

    def test_serialization_round_trip_all_dims(self, rng):
        """Random frames of every size up to 16x16 survive to_bytes/from_bytes."""
        for rows in range(1, 17):
            for cols in range(1, 17):
                dims = GridDims(rows, cols)
                for _ in range(3):
                    frame = Bitmap.from_int(dims, rng.getrandbits(dims.size))
                    data = frame.to_bytes()
                    assert len(data) == dims.frame_bytes
                    assert Bitmap.from_bytes(dims, data) == frame

    def test_from_bytes_ignores_padding(self):
        """Padding bits beyond the last column do not become taxels."""
        frame = Bitmap.from_bytes(GridDims(1, 4), bytes([0xFF]))
        assert frame.popcount() == 4

    def test_from_bytes_wrong_length(self, dims16):
        """A payload of the wrong length is a dimension mismatch."""
        with pytest.raises(DimensionMismatchError):
            Bitmap.from_bytes(dims16, bytes(31))

    def test_array_round_trip_shape(self, dims4):
        """to_array has shape (rows, cols)."""
        frame = Bitmap.from_coords(dims4, [(1, 2)])
        arr = frame.to_array()
        assert arr.shape == (4, 4)
        assert arr[1, 2]
        assert Bitmap.from_array(arr) == frame

    def test_complement(self, dims4):
        """Complement flips every bit."""
        frame = Bitmap.from_coords(dims4, [(0, 0)])
        assert frame.complement().popcount() == 15

    def test_row_is_clear(self, dims4):
        """row_is_clear looks only at the given row."""
        frame = Bitmap.from_coords(dims4, [(2, 1)])
        assert frame.row_is_clear(0)
        assert not frame.row_is_clear(2)


class TestSolenoidSpec:
    """Test SolenoidSpec defaults and validation."""

    def test_defaults(self):
        """Defaults describe the reference solenoid."""
        spec = SolenoidSpec()
        assert spec.holding_force_g == 500.0
        assert spec.coil_resistance_ohm == 24.0
        assert spec.nominal_dc_voltage_v == 12.0
        assert spec.response_time_s == 0.004

    def test_rejects_non_positive_field(self):
        """Every physical quantity must be positive."""
        with pytest.raises(ValidationError):
            SolenoidSpec(holding_force_g=0)


class TestGridState:
    """Test GridState and snapshots."""

    def test_new_grid_all_down_at_ambient(self, dims4):
        """A new grid is all Down at ambient with zero counters."""
        grid = new_grid(dims4, ambient_c=25.0)
        assert snapshot(grid).is_clear()
        for cell in grid.cells():
            assert cell == SolenoidState(Plunger.DOWN, 25.0, 0, 0)

    def test_new_grid_blank_for_every_dims(self):
        """A fresh grid snapshots to an all-clear frame at every valid size."""
        for rows in range(1, 17):
            for cols in range(1, 17):
                dims = GridDims(rows, cols)
                frame = snapshot(new_grid(dims))
                assert frame.dims == dims
                assert frame == Bitmap.blank(dims)

    def test_replace_cell_round_trip(self, dims4):
        """replace_cell then cell returns the same state."""
        grid = new_grid(dims4)
        state = SolenoidState(Plunger.UP, 31.5, 3, 2)
        grid.replace_cell(1, 2, state)
        assert grid.cell(1, 2) == state
        assert snapshot(grid).coords() == [(1, 2)]

    def test_cell_out_of_range(self, dims4):
        """Reading a cell outside the grid raises."""
        with pytest.raises(ValidationError):
            new_grid(dims4).cell(0, 4)

    def test_copy_is_independent(self, dims4):
        """Mutating a copy leaves the original untouched."""
        grid = new_grid(dims4)
        clone = grid.copy()
        clone.raised[0, 0] = True
        assert not grid.raised[0, 0]
        assert not grid.same_as(clone)

    def test_max_temperature(self, dims4):
        """max_temperature_c is the hottest cell."""
        grid = GridState(dims4, 20.0)
        grid.temperature_c[2, 3] = 42.0
        assert grid.max_temperature_c == 42.0
        assert isinstance(grid.temperature_c, np.ndarray)


class TestBitmapDiff:
    """Test bitmap_diff."""

    def test_identical_frames(self, dims4):
        """Equal frames have no differences."""
        frame = Bitmap.from_coords(dims4, [(1, 1)])
        assert bitmap_diff(frame, frame) == []

    def test_differences_sorted(self, dims4):
        """Differences come back row-major."""
        a = Bitmap.from_coords(dims4, [(3, 3), (0, 1)])
        b = Bitmap.from_coords(dims4, [(0, 1), (2, 0)])
        assert bitmap_diff(a, b) == [(2, 0), (3, 3)]

    def test_mismatched_dims(self, dims4, dims16):
        """Frames of different sizes cannot be compared."""
        with pytest.raises(DimensionMismatchError):
            bitmap_diff(Bitmap.blank(dims4), Bitmap.blank(dims16))

    def test_complement_differs_everywhere(self, dims4, random_frame):
        """A frame and its complement differ at all 16 coordinates."""
        frame = random_frame(dims4)
        assert bitmap_diff(frame, frame.complement()) == [(r, c) for r in range(4) for c in range(4)]

    def test_symmetric(self, rng):
        """diff(a, b) and diff(b, a) name the same coordinates."""
        for _ in range(500):
            dims = GridDims(rng.randint(1, 16), rng.randint(1, 16))
            a = Bitmap.from_int(dims, rng.getrandbits(dims.size))
            b = Bitmap.from_int(dims, rng.getrandbits(dims.size))
            assert set(bitmap_diff(a, b)) == set(bitmap_diff(b, a))
            assert len(bitmap_diff(a, b)) == sum(x != y for x, y in zip(a.bits, b.bits))
