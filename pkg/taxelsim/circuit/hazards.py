"""Hazard monitor for the gate network.

Hazards are observational: the physics still follows the gates. In strict
mode the monitor raises on the first record.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from taxelsim.circuit.gates import CoilExcitation, PinState
from taxelsim.utils.exceptions import HazardError

logger = logging.getLogger(__name__)


class HazardKind(str, Enum):
    UNINTENDED_SET_DURING_RESET = "UnintendedSetDuringReset"
    MULTIPLE_ROWS_SELECTED = "MultipleRowsSelected"
    DOUBLE_COIL_DRIVE = "DoubleCoilDrive"


@dataclass(frozen=True, slots=True)
class HazardRecord:
    step: int
    kind: HazardKind
    coords: tuple[tuple[int, int], ...] = ()

    def describe(self) -> str:
        where = ";".join(f"{r},{c}" for r, c in self.coords) or "-"
        return f"{self.kind.value}@{where}"


@dataclass
class HazardReport:
    records: list[HazardRecord] = field(default_factory=list)

    def extend(self, records: list[HazardRecord]) -> None:
        self.records.extend(records)

    def count(self, kind: HazardKind | None = None) -> int:
        if kind is None:
            return len(self.records)
        return sum(1 for record in self.records if record.kind is kind)

    def by_kind(self) -> dict[str, int]:
        return dict(Counter(record.kind.value for record in self.records))

    def __bool__(self) -> bool:
        return bool(self.records)

    def __len__(self) -> int:
        return len(self.records)


def scan_hazards(pins: PinState, excitation: CoilExcitation, step: int) -> list[HazardRecord]:
    """Hazard records for one step.

    A set coil energised while PA4 is high is exactly the reference network's
    ``XOR(1, 0)`` corner: a selected row during reset with a low column bit.
    """
    records: list[HazardRecord] = []
    if pins.mode and excitation.set_coords:
        records.append(
            HazardRecord(step, HazardKind.UNINTENDED_SET_DURING_RESET, excitation.set_coords)
        )
    if excitation.doubled_coords:
        records.append(
            HazardRecord(step, HazardKind.DOUBLE_COIL_DRIVE, excitation.doubled_coords)
        )
    if len(excitation.selected_lines) > 1:
        rows = excitation.selected_rows
        coords = tuple((r, c) for r in rows for c in range(excitation.dims.cols))
        records.append(HazardRecord(step, HazardKind.MULTIPLE_ROWS_SELECTED, coords))
    return records


class HazardMonitor:
    """Collects hazard records across a run; aborts on the first one when strict."""

    def __init__(self, strict: bool = False) -> None:
        self.strict = strict
        self.report = HazardReport()

    def observe(self, pins: PinState, excitation: CoilExcitation, step: int) -> list[HazardRecord]:
        records = scan_hazards(pins, excitation, step)
        if not records:
            return records
        self.report.extend(records)
        for record in records:
            logger.warning(f"Hazard at step {step}: {record.describe()}")
        if self.strict:
            raise HazardError(records[0])
        return records
