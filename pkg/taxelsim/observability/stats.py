"""Run statistics - pulse counts, energy, heat and hazards of one simulated run."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from taxelsim.circuit.budget import ResourceBudget
from taxelsim.circuit.hazards import HazardReport
from taxelsim.circuit.physics import EnergyLedger

logger = logging.getLogger(__name__)


@dataclass
class RunStats:
    """Totals of a run, consistent with its energy ledger and hazard report.

    Everything here is simulated; nothing depends on wall-clock time, so two
    runs with the same inputs report identical stats.
    """

    budget: ResourceBudget
    set_pulses: int = 0
    reset_pulses: int = 0
    total_joules: float = 0.0
    max_temperature_c: float = 0.0
    hazard_count: int = 0
    steps: int = 0
    simulated_time_s: float = 0.0

    @classmethod
    def collect(
        cls,
        budget: ResourceBudget,
        ledger: EnergyLedger,
        hazards: HazardReport,
        *,
        steps: int,
        simulated_time_s: float,
        max_temperature_c: float,
    ) -> RunStats:
        stats = cls(
            budget=budget,
            set_pulses=ledger.set_pulses,
            reset_pulses=ledger.reset_pulses,
            total_joules=ledger.total_joules,
            max_temperature_c=max_temperature_c,
            hazard_count=len(hazards),
            steps=steps,
            simulated_time_s=simulated_time_s,
        )
        logger.debug(f"Collected stats: {stats.get_summary()}")
        return stats

    def get_stats(self) -> dict[str, Any]:
        """Flat dictionary of every statistic, budget echo included."""
        return {
            "set_pulses": self.set_pulses,
            "reset_pulses": self.reset_pulses,
            "total_joules": round(self.total_joules, 9),
            "max_temperature_c": round(self.max_temperature_c, 6),
            "hazard_count": self.hazard_count,
            "steps": self.steps,
            "simulated_time_s": round(self.simulated_time_s, 9),
            "dims": str(self.budget.dims),
            "column_transistors": self.budget.column_transistors,
            "row_transistors": self.budget.row_transistors,
            "controller_pins": self.budget.controller_pins,
        }

    def get_summary(self) -> str:
        return (
            f"Set: {self.set_pulses} | Reset: {self.reset_pulses} | "
            f"Energy: {self.total_joules:.4f} J | Hazards: {self.hazard_count}"
        )
