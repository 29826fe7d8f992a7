from __future__ import annotations

from dataclasses import dataclass

from taxelsim.circuit.gates import ROW_ADDRESS_BITS
from taxelsim.taxel.model import GridDims

MODE_PINS = 1


@dataclass(frozen=True, slots=True)
class ResourceBudget:
    """Active-element and pin counts of the row-scan scheme vs. per-taxel bridges."""

    dims: GridDims
    column_transistors: int
    row_transistors: int
    controller_pins: int
    naive_half_bridge: int
    naive_full_bridge: int

    @property
    def savings_ratio(self) -> float:
        """Half-bridge transistors per column transistor of the row-scan scheme."""
        return self.naive_half_bridge / self.column_transistors

    def summary(self) -> str:
        return (
            f"{self.column_transistors} column + {self.row_transistors} row transistors, "
            f"{self.controller_pins} pins; naive half-bridge {self.naive_half_bridge} "
            f"({self.savings_ratio:.1f}× more column devices)"
        )


def resource_budget(dims: GridDims) -> ResourceBudget:
    cells = dims.rows * dims.cols
    return ResourceBudget(
        dims=dims,
        column_transistors=2 * dims.cols,
        row_transistors=dims.rows,
        controller_pins=ROW_ADDRESS_BITS + MODE_PINS + dims.cols,
        naive_half_bridge=2 * cells,
        naive_full_bridge=4 * cells,
    )
