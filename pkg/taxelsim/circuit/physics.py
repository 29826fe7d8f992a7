"""Pulse drive, energy ledger, thermal and mechanical-press model of the solenoids.

Pulses are atomic events: the plunger latches at the end of a pulse and
draws nothing while it is held by the permanent magnet.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TypeVar

import numpy as np
import numpy.typing as npt

from taxelsim.circuit.gates import CoilExcitation
from taxelsim.taxel.model import GridState, Plunger, SolenoidSpec, SolenoidState
from taxelsim.utils.exceptions import DimensionMismatchError, ValidationError

logger = logging.getLogger(__name__)

TemperatureT = TypeVar("TemperatureT", float, npt.NDArray[np.float64])


@dataclass(frozen=True, slots=True)
class PowerParams:
    """Supply parameters; the pulse voltage U_P is derived, never stored."""

    u_dc_v: float = 12.0
    duty: float = 0.5
    pulse_width_s: float = 0.01
    coil_resistance_ohm: float = 24.0

    def __post_init__(self) -> None:
        if not self.u_dc_v > 0:
            raise ValidationError("u_dc_v must be > 0", field="u_dc_v", value=self.u_dc_v)
        _check_duty(self.duty)
        if not self.pulse_width_s > 0:
            raise ValidationError(
                "pulse_width_s must be > 0", field="pulse_width_s", value=self.pulse_width_s
            )
        if not self.coil_resistance_ohm > 0:
            raise ValidationError(
                "coil_resistance_ohm must be > 0",
                field="coil_resistance_ohm",
                value=self.coil_resistance_ohm,
            )


def _check_duty(duty: float) -> None:
    if not 0 < duty <= 1:
        raise ValidationError("duty must be in (0, 1]", field="duty", value=duty)


def pulse_voltage(power: PowerParams) -> float:
    """U_P = U_DC / duty: the DC rating scaled up for pulsed operation."""
    _check_duty(power.duty)
    return power.u_dc_v / power.duty


def pulse_current(power: PowerParams) -> float:
    return pulse_voltage(power) / power.coil_resistance_ohm


def pulse_energy(power: PowerParams) -> float:
    """Resistive energy of one coil pulse in joules."""
    voltage = pulse_voltage(power)
    return voltage * voltage / power.coil_resistance_ohm * power.pulse_width_s


@dataclass
class EnergyLedger:
    set_pulses: int = 0
    reset_pulses: int = 0
    total_joules: float = 0.0
    # Holding a latched plunger draws nothing; stays 0.
    static_joules: float = 0.0

    def charge(self, set_pulses: int, reset_pulses: int, joules_per_pulse: float) -> None:
        self.set_pulses += set_pulses
        self.reset_pulses += reset_pulses
        self.total_joules += (set_pulses + reset_pulses) * joules_per_pulse

    @property
    def pulses(self) -> int:
        return self.set_pulses + self.reset_pulses

    def copy(self) -> EnergyLedger:
        return EnergyLedger(
            self.set_pulses, self.reset_pulses, self.total_joules, self.static_joules
        )


@dataclass(frozen=True, slots=True)
class ThermalParams:
    c_per_joule: float = 5.0
    cooling_rate_per_s: float = 0.1


def apply_pulse(
    grid: GridState,
    excitation: CoilExcitation,
    power: PowerParams,
    ledger: EnergyLedger,
) -> tuple[GridState, EnergyLedger]:
    """Apply one atomic coil pulse to the grid, in place.

    Set raises, Reset lowers, unexcited taxels keep their latched position.
    A taxel with both coils driven keeps its position but both pulses are
    counted and charged.
    """
    if excitation.dims != grid.dims:
        raise DimensionMismatchError(grid.dims, excitation.dims)
    if excitation.is_empty:
        return grid, ledger

    np.logical_and(grid.raised, excitation.keep_mask, out=grid.raised)
    np.logical_or(grid.raised, excitation.raise_mask, out=grid.raised)
    np.add(grid.set_pulse_count, excitation.set_mask, out=grid.set_pulse_count)
    np.add(grid.reset_pulse_count, excitation.reset_mask, out=grid.reset_pulse_count)

    n_set = excitation.n_set
    n_reset = excitation.n_reset
    ledger.charge(n_set, n_reset, pulse_energy(power))
    logger.debug(f"Pulse: {n_set} set, {n_reset} reset")
    return grid, ledger


def excitation_joules(
    excitation: CoilExcitation, power: PowerParams
) -> npt.NDArray[np.float64] | float:
    """Energy deposited in each taxel by one step's pulse."""
    if excitation.is_empty:
        return 0.0
    return excitation.pulse_counts * pulse_energy(power)


def _thermal_update(
    temperature: TemperatureT,
    joules_in: TemperatureT | float,
    dt: float,
    ambient_c: float,
    thermal: ThermalParams,
) -> TemperatureT:
    return (
        temperature
        + thermal.c_per_joule * joules_in
        - thermal.cooling_rate_per_s * (temperature - ambient_c) * dt
    )


def _check_dt(dt: float) -> None:
    if not dt > 0:
        raise ValidationError("dt must be > 0", field="dt", value=dt)


def thermal_step(
    cell: SolenoidState,
    joules_in: float,
    dt: float,
    ambient_c: float,
    thermal: ThermalParams,
) -> SolenoidState:
    """Heat by the pulse energy, then relax toward ambient over ``dt``."""
    _check_dt(dt)
    temperature = _thermal_update(cell.temperature_c, joules_in, dt, ambient_c, thermal)
    return SolenoidState(
        plunger=cell.plunger,
        temperature_c=temperature,
        set_pulse_count=cell.set_pulse_count,
        reset_pulse_count=cell.reset_pulse_count,
    )


def thermal_step_grid(
    grid: GridState,
    joules_in: npt.NDArray[np.float64] | float,
    dt: float,
    ambient_c: float,
    thermal: ThermalParams,
) -> GridState:
    """:func:`thermal_step` applied to every taxel at once, updating the grid's array in place."""
    _check_dt(dt)
    temperature = grid.temperature_c
    decay = thermal.cooling_rate_per_s * dt
    if decay:
        temperature -= decay * (temperature - ambient_c)
    if np.ndim(joules_in) or joules_in:
        temperature += thermal.c_per_joule * joules_in
    return grid


def apply_press(cell: SolenoidState, force_g: float, spec: SolenoidSpec) -> SolenoidState:
    """Push down on a taxel; at or above the holding force the latch lets go."""
    if force_g < 0:
        raise ValidationError("force_g must be >= 0", field="force_g", value=force_g)
    if cell.plunger is Plunger.UP and force_g >= spec.holding_force_g:
        return SolenoidState(
            plunger=Plunger.DOWN,
            temperature_c=cell.temperature_c,
            set_pulse_count=cell.set_pulse_count,
            reset_pulse_count=cell.reset_pulse_count,
        )
    return cell
