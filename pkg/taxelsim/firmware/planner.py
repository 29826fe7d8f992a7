"""Row-scan sequencer: turns frames into waveform schedules.

A schedule never drives PA4 high with a low column bit while a row is
selected. The XOR set gate would open for that column, so rows are always
reset as a whole and a changed image is shown by clear-then-show.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from taxelsim.circuit.gates import PinState
from taxelsim.taxel.model import Bitmap, GridDims
from taxelsim.utils.exceptions import DimensionMismatchError, ValidationError


class Phase(str, Enum):
    ROW_RESET = "RowReset"
    ROW_SET = "RowSet"
    SETTLE = "Settle"
    IDLE = "Idle"


@dataclass(frozen=True, slots=True)
class Timing:
    pulse_width_s: float = 0.01
    settle_s: float = 0.005

    def __post_init__(self) -> None:
        if not self.pulse_width_s > 0:
            raise ValidationError(
                "pulse_width_s must be > 0", field="pulse_width_s", value=self.pulse_width_s
            )
        if not self.settle_s > 0:
            raise ValidationError("settle_s must be > 0", field="settle_s", value=self.settle_s)


@dataclass(frozen=True, slots=True)
class WaveformStep:
    pins: PinState
    duration_s: float
    phase: Phase

    def __post_init__(self) -> None:
        if not self.duration_s > 0:
            raise ValidationError(
                "duration_s must be > 0", field="duration_s", value=self.duration_s
            )


Schedule = list[WaveformStep]


@lru_cache(maxsize=1024)
def _row_reset(row: int, dims: GridDims, timing: Timing) -> tuple[WaveformStep, ...]:
    pins = PinState.drive(row, mode=True, columns=[True] * dims.cols)
    return (
        WaveformStep(pins, timing.pulse_width_s, Phase.ROW_RESET),
        WaveformStep(PinState.idle(row), timing.settle_s, Phase.SETTLE),
    )


@lru_cache(maxsize=4096)
def _row_set(row: int, columns: tuple[bool, ...], timing: Timing) -> tuple[WaveformStep, ...]:
    pins = PinState.drive(row, mode=False, columns=columns)
    return (
        WaveformStep(pins, timing.pulse_width_s, Phase.ROW_SET),
        WaveformStep(PinState.idle(row), timing.settle_s, Phase.SETTLE),
    )


@lru_cache(maxsize=1024)
def _idle(row: int, timing: Timing) -> WaveformStep:
    return WaveformStep(PinState.idle(row), timing.settle_s, Phase.IDLE)


def plan_show(
    frame: Bitmap,
    timing: Timing,
    skip_reset_if_clear: bool = False,
    shadow: Bitmap | None = None,
) -> Schedule:
    """Reset then set each row in ascending order, with an Idle strobe after every row.

    With ``skip_reset_if_clear`` a row the shadow frame believes is already
    clear is not reset first.
    """
    dims = frame.dims
    if shadow is None:
        shadow = Bitmap.blank(dims)
    if shadow.dims != dims:
        raise DimensionMismatchError(dims, shadow.dims)

    schedule: Schedule = []
    for row in range(dims.rows):
        if not (skip_reset_if_clear and shadow.row_is_clear(row)):
            schedule.extend(_row_reset(row, dims, timing))
        columns = frame.row(row)
        if any(columns):
            schedule.extend(_row_set(row, columns, timing))
        schedule.append(_idle(row, timing))
    return schedule


def plan_clear(dims: GridDims, timing: Timing) -> Schedule:
    """Reset every row, ascending, all column bits high."""
    schedule: Schedule = []
    for row in range(dims.rows):
        schedule.extend(_row_reset(row, dims, timing))
        schedule.append(_idle(row, timing))
    return schedule


def has_hazardous_pins(step: WaveformStep, dims: GridDims) -> bool:
    """True for the forbidden pattern: reset mode with a selected row and a low column bit."""
    pins = step.pins
    return pins.row_enable and pins.mode and not all(pins.col[: dims.cols])
