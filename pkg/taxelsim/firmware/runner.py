"""Executes waveform schedules through the circuit simulator."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from taxelsim.circuit.gates import REFERENCE_GATES, GateLogic, excite
from taxelsim.circuit.hazards import HazardMonitor, HazardRecord
from taxelsim.circuit.physics import (
    EnergyLedger,
    PowerParams,
    ThermalParams,
    apply_pulse,
    excitation_joules,
    thermal_step_grid,
)
from taxelsim.firmware.planner import WaveformStep
from taxelsim.observability.trace import TraceRecord
from taxelsim.taxel.model import GridState

logger = logging.getLogger(__name__)

StepCallback = Callable[[int, WaveformStep], None]


@dataclass
class ScheduleResult:
    grid: GridState
    ledger: EnergyLedger
    hazards: list[HazardRecord] = field(default_factory=list)
    trace: list[TraceRecord] = field(default_factory=list)
    steps: int = 0
    elapsed_s: float = 0.0
    max_temperature_c: float = 0.0


def run_schedule(
    schedule: Sequence[WaveformStep],
    grid: GridState,
    power: PowerParams,
    ledger: EnergyLedger,
    monitor: HazardMonitor | None = None,
    *,
    thermal: ThermalParams | None = None,
    ambient_c: float = 20.0,
    gates: GateLogic = REFERENCE_GATES,
    start_step: int = 0,
    record_trace: bool = True,
    on_step: StepCallback | None = None,
) -> ScheduleResult:
    """Apply each step in order: gate evaluation, hazard check, pulse, thermal decay.

    Raises:
        HazardError: the monitor is strict and a step is hazardous; the
            offending pulse is not applied.
    """
    monitor = monitor or HazardMonitor()
    thermal = thermal or ThermalParams()
    result = ScheduleResult(grid=grid, ledger=ledger, max_temperature_c=grid.max_temperature_c)

    for offset, step in enumerate(schedule):
        index = start_step + offset
        excitation = excite(step.pins, grid.dims, gates)
        records = monitor.observe(step.pins, excitation, index)
        joules_before = ledger.total_joules

        apply_pulse(grid, excitation, power, ledger)
        thermal_step_grid(
            grid, excitation_joules(excitation, power), step.duration_s, ambient_c, thermal
        )

        result.hazards.extend(records)
        result.steps += 1
        result.elapsed_s += step.duration_s
        if not excitation.is_empty:
            result.max_temperature_c = max(result.max_temperature_c, grid.max_temperature_c)
        if record_trace:
            result.trace.append(
                TraceRecord(
                    step=index,
                    phase=step.phase.value,
                    row_addr=step.pins.row_addr,
                    row_enable=step.pins.row_enable,
                    mode=step.pins.mode,
                    col_bits=step.pins.col_word,
                    set_coords=excitation.set_coords,
                    reset_coords=excitation.reset_coords,
                    joules=ledger.total_joules - joules_before,
                    hazards=tuple(record.describe() for record in records),
                )
            )
        if on_step is not None:
            on_step(index, step)

    # Idle steps only relax toward ambient: the peak follows a pulse or is the final state.
    result.max_temperature_c = max(result.max_temperature_c, grid.max_temperature_c)
    logger.debug(
        f"Ran {result.steps} steps, {len(result.hazards)} hazards, "
        f"{ledger.total_joules:.4f} J total"
    )
    return result
