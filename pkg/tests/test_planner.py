"""Tests for the row-scan sequencer."""

import pytest

from taxelsim.firmware.planner import (
    Phase,
    Timing,
    WaveformStep,
    has_hazardous_pins,
    plan_clear,
    plan_show,
)
from taxelsim.circuit.gates import PinState
from taxelsim.taxel.model import Bitmap, GridDims
from taxelsim.utils.exceptions import DimensionMismatchError, ValidationError


def _phases(schedule):
    return [step.phase for step in schedule]


class TestPlanShow:
    """Test plan_show."""

    def test_blank_frame_with_skip_is_idle_only(self, dims16):
        """Nothing to reset and nothing to set leaves one Idle per row."""
        blank = Bitmap.blank(dims16)
        schedule = plan_show(blank, Timing(), skip_reset_if_clear=True, shadow=blank)
        assert _phases(schedule) == [Phase.IDLE] * 16

    def test_single_taxel(self, dims16):
        """Only row 5 gets a set pulse, with column 9 high."""
        frame = Bitmap.from_coords(dims16, [(5, 9)])
        schedule = plan_show(frame, Timing(), skip_reset_if_clear=True)
        sets = [s for s in schedule if s.phase is Phase.ROW_SET]
        assert len(sets) == 1
        assert sets[0].pins.row_addr == 5
        assert sets[0].pins.col_word == 1 << 9
        assert not sets[0].pins.mode

    def test_unknown_grid_resets_every_row(self, dims16):
        """Without skip every row is reset before it is set."""
        schedule = plan_show(Bitmap.blank(dims16), Timing())
        resets = [s for s in schedule if s.phase is Phase.ROW_RESET]
        assert [s.pins.row_addr for s in resets] == list(range(16))
        assert all(s.pins.mode and s.pins.col_word == 0xFFFF for s in resets)

    def test_rows_ascending_reset_before_set(self, dims4):
        """Within a row the reset comes first; rows run in order."""
        frame = Bitmap.from_coords(dims4, [(0, 0), (2, 3)])
        schedule = plan_show(frame, Timing())
        pulses = [
            (s.pins.row_addr, s.phase)
            for s in schedule
            if s.phase in (Phase.ROW_RESET, Phase.ROW_SET)
        ]
        assert pulses == [
            (0, Phase.ROW_RESET),
            (0, Phase.ROW_SET),
            (1, Phase.ROW_RESET),
            (2, Phase.ROW_RESET),
            (2, Phase.ROW_SET),
            (3, Phase.ROW_RESET),
        ]

    def test_skip_uses_shadow(self, dims4):
        """Rows the shadow says are raised are still reset."""
        shadow = Bitmap.from_coords(dims4, [(1, 1)])
        schedule = plan_show(Bitmap.blank(dims4), Timing(), True, shadow)
        resets = [s.pins.row_addr for s in schedule if s.phase is Phase.ROW_RESET]
        assert resets == [1]

    def test_step_durations(self, dims4):
        """Pulses last pulse_width_s; settle and idle last settle_s."""
        timing = Timing(pulse_width_s=0.02, settle_s=0.003)
        for step in plan_show(Bitmap.from_coords(dims4, [(0, 0)]), timing):
            expected = 0.02 if step.phase in (Phase.ROW_RESET, Phase.ROW_SET) else 0.003
            assert step.duration_s == expected

    def test_never_hazardous(self, dims16, random_frame):
        """No planned step drives reset mode with a low column bit."""
        for _ in range(50):
            frame = random_frame(dims16)
            for skip in (False, True):
                schedule = plan_show(frame, Timing(), skip, random_frame(dims16))
                assert not any(has_hazardous_pins(s, dims16) for s in schedule)

    def test_shadow_dims_mismatch(self, dims4, dims16):
        """Shadow and frame must agree on dims."""
        with pytest.raises(DimensionMismatchError):
            plan_show(Bitmap.blank(dims4), Timing(), True, Bitmap.blank(dims16))


class TestPlanClear:
    """Test plan_clear."""

    def test_reference_grid(self, dims16):
        """Sixteen full-row resets, each followed by Settle and Idle."""
        schedule = plan_clear(dims16, Timing())
        assert _phases(schedule) == [Phase.ROW_RESET, Phase.SETTLE, Phase.IDLE] * 16

    def test_narrow_grid(self):
        """A 1x4 grid needs one reset with four columns high."""
        schedule = plan_clear(GridDims(1, 4), Timing())
        resets = [s for s in schedule if s.phase is Phase.ROW_RESET]
        assert len(resets) == 1
        assert resets[0].pins.col_word == 0b1111
        assert not has_hazardous_pins(resets[0], GridDims(1, 4))


class TestTiming:
    """Test Timing and WaveformStep validation."""

    @pytest.mark.parametrize("kwargs", [{"pulse_width_s": 0}, {"settle_s": -1.0}])
    def test_non_positive(self, kwargs):
        """Durations must be positive."""
        with pytest.raises(ValidationError):
            Timing(**kwargs)

    def test_step_duration(self):
        """A waveform step cannot be instantaneous."""
        with pytest.raises(ValidationError):
            WaveformStep(PinState.idle(), 0.0, Phase.IDLE)

    def test_hazard_detector(self, dims4):
        """has_hazardous_pins flags reset mode with a low column."""
        step = WaveformStep(PinState.drive(0, mode=True, columns=[True, False]), 0.01, Phase.ROW_RESET)
        assert has_hazardous_pins(step, dims4)
