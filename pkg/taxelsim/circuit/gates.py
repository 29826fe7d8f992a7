"""Row decoder, column gates and the switch matrix that excites the coils.

The controller drives four row-address pins (PA0-PA3) into a one-of-16
decoder, a mode pin (PA4) and sixteen column pins (PB0-PB15). Per column
the set transistor gate is ``PA4 XOR PBn`` and the reset transistor gate is
``PA4 AND PBn``; only taxels in the decoded row have a ground path.
"""

from __future__ import annotations

import operator
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any

import numpy as np
import numpy.typing as npt

from taxelsim.taxel.model import COLUMN_PORT_WIDTH, GridDims
from taxelsim.utils.exceptions import ValidationError

ROW_ADDRESS_BITS = 4
DECODER_LINES = 1 << ROW_ADDRESS_BITS

BoolMask = npt.NDArray[np.bool_]
GateFn = Callable[[Any, Any], Any]
DecoderFn = Callable[[int, bool], frozenset[int]]


@dataclass(frozen=True, slots=True)
class PinState:
    """Snapshot of the controller outputs seen by the addressing circuit."""

    row_addr: int = 0
    row_enable: bool = False
    mode: bool = False
    col: tuple[bool, ...] = (False,) * COLUMN_PORT_WIDTH

    def __post_init__(self) -> None:
        if not 0 <= self.row_addr < DECODER_LINES:
            raise ValidationError(
                f"row_addr must be in [0,{DECODER_LINES - 1}]",
                field="row_addr",
                value=self.row_addr,
            )
        if len(self.col) != COLUMN_PORT_WIDTH:
            raise ValidationError(
                f"Column port is {COLUMN_PORT_WIDTH} bits wide, got {len(self.col)}",
                field="col",
            )

    @classmethod
    def drive(
        cls,
        row_addr: int,
        mode: bool,
        columns: Sequence[bool],
        enable: bool = True,
    ) -> PinState:
        """Pins for one row strobe; ``columns`` is padded low to the port width."""
        if len(columns) > COLUMN_PORT_WIDTH:
            raise ValidationError(
                f"At most {COLUMN_PORT_WIDTH} column bits, got {len(columns)}",
                field="col",
            )
        padded = tuple(bool(bit) for bit in columns)
        padded += (False,) * (COLUMN_PORT_WIDTH - len(padded))
        return cls(row_addr=row_addr, row_enable=enable, mode=mode, col=padded)

    @classmethod
    def idle(cls, row_addr: int = 0) -> PinState:
        return cls(row_addr=row_addr)

    @property
    def col_word(self) -> int:
        """Port B as a 16-bit word, bit n = PBn."""
        return sum(1 << n for n, bit in enumerate(self.col) if bit)


def decode_row(row_addr: int, enable: bool) -> frozenset[int]:
    """One-of-16 decoder: the set of active output lines."""
    if not 0 <= row_addr < DECODER_LINES:
        raise ValidationError(
            f"row_addr must be in [0,{DECODER_LINES - 1}]", field="row_addr", value=row_addr
        )
    return frozenset((row_addr,)) if enable else frozenset()


@dataclass(frozen=True, slots=True)
class GateLogic:
    """The decoder and per-column gate functions of the addressing circuit.

    Gate functions are applied to numpy boolean arrays as well as to plain
    bools, so they must be elementwise operators.
    """

    name: str = "reference"
    decoder: DecoderFn = field(default=decode_row)
    set_gate: GateFn = field(default=operator.xor)
    reset_gate: GateFn = field(default=operator.and_)


REFERENCE_GATES = GateLogic()
# Test hook: the set transistor gated by AND instead of XOR.
MUTANT_AND_SET_GATE = GateLogic(name="mutant-and-set", set_gate=operator.and_)


def column_gate(mode: bool, col_bit: bool, gates: GateLogic = REFERENCE_GATES) -> tuple[bool, bool]:
    """(set transistor gate, reset transistor gate) for one column."""
    return bool(gates.set_gate(mode, col_bit)), bool(gates.reset_gate(mode, col_bit))


class Coil(str, Enum):
    NONE = "none"
    SET = "set"
    RESET = "reset"


@dataclass(frozen=True, slots=True, eq=False)
class CoilExcitation:
    """Which coil of each taxel is energised during one step.

    Excitations are cached per pin state, so everything derived from the
    masks is computed once here.
    """

    dims: GridDims
    set_mask: BoolMask
    reset_mask: BoolMask
    selected_lines: frozenset[int] = frozenset()

    set_coords: tuple[tuple[int, int], ...] = field(init=False, repr=False)
    reset_coords: tuple[tuple[int, int], ...] = field(init=False, repr=False)
    doubled_coords: tuple[tuple[int, int], ...] = field(init=False, repr=False)
    # Up after the pulse is ``raised & keep_mask | raise_mask``.
    raise_mask: BoolMask = field(init=False, repr=False)
    keep_mask: BoolMask = field(init=False, repr=False)
    pulse_counts: npt.NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        derived = {
            "set_coords": tuple(_coords(self.set_mask)),
            "reset_coords": tuple(_coords(self.reset_mask)),
            "doubled_coords": tuple(_coords(self.set_mask & self.reset_mask)),
            "raise_mask": self.set_mask & ~self.reset_mask,
            "keep_mask": ~(self.reset_mask & ~self.set_mask),
            "pulse_counts": self.set_mask.astype(np.float64) + self.reset_mask,
        }
        for name, value in derived.items():
            if isinstance(value, np.ndarray):
                value.setflags(write=False)
            object.__setattr__(self, name, value)

    def at(self, row: int, col: int) -> Coil:
        is_set = bool(self.set_mask[row, col])
        is_reset = bool(self.reset_mask[row, col])
        if is_set and is_reset:
            raise ValidationError(
                f"Taxel ({row},{col}) has both coils driven", field="coil", value=(row, col)
            )
        if is_set:
            return Coil.SET
        if is_reset:
            return Coil.RESET
        return Coil.NONE

    def set_cells(self) -> list[tuple[int, int]]:
        return list(self.set_coords)

    def reset_cells(self) -> list[tuple[int, int]]:
        return list(self.reset_coords)

    def double_driven(self) -> list[tuple[int, int]]:
        return list(self.doubled_coords)

    @property
    def n_set(self) -> int:
        return len(self.set_coords)

    @property
    def n_reset(self) -> int:
        return len(self.reset_coords)

    @property
    def is_empty(self) -> bool:
        return not (self.set_coords or self.reset_coords)

    @property
    def selected_rows(self) -> list[int]:
        return sorted(line for line in self.selected_lines if line < self.dims.rows)


def _coords(mask: BoolMask) -> list[tuple[int, int]]:
    return [(int(r), int(c)) for r, c in zip(*np.nonzero(mask))]


@lru_cache(maxsize=64)
def _inert_mask(dims: GridDims) -> BoolMask:
    mask = np.zeros((dims.rows, dims.cols), dtype=bool)
    mask.setflags(write=False)
    return mask


def excite(pins: PinState, dims: GridDims, gates: GateLogic = REFERENCE_GATES) -> CoilExcitation:
    """Evaluate the gate network for one pin state.

    Taxels outside the decoded row have no ground path and stay unexcited
    whatever the column gates do. Results are shared between calls, so the
    returned masks are read-only.
    """
    return _excite(pins, dims, gates)


@lru_cache(maxsize=4096)
def _excite(pins: PinState, dims: GridDims, gates: GateLogic) -> CoilExcitation:
    if dims.cols > COLUMN_PORT_WIDTH:
        raise ValidationError(
            f"At most {COLUMN_PORT_WIDTH} columns per port, got {dims.cols}",
            field="cols",
            value=dims.cols,
        )
    lines = gates.decoder(pins.row_addr, pins.row_enable)
    rows = [line for line in lines if line < dims.rows]
    if not rows:
        inert = _inert_mask(dims)
        return CoilExcitation(dims, inert, inert, lines)

    col_bits = np.array(pins.col[: dims.cols], dtype=bool)
    mode_bits = np.full(dims.cols, pins.mode, dtype=bool)
    set_row = np.asarray(gates.set_gate(mode_bits, col_bits), dtype=bool)
    reset_row = np.asarray(gates.reset_gate(mode_bits, col_bits), dtype=bool)

    set_mask = np.zeros((dims.rows, dims.cols), dtype=bool)
    reset_mask = np.zeros((dims.rows, dims.cols), dtype=bool)
    for row in rows:
        set_mask[row] = set_row
        reset_mask[row] = reset_row
    set_mask.setflags(write=False)
    reset_mask.setflags(write=False)
    return CoilExcitation(dims, set_mask, reset_mask, lines)
