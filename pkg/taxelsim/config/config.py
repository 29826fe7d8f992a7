from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from taxelsim.circuit.gates import DECODER_LINES
from taxelsim.circuit.physics import PowerParams, ThermalParams
from taxelsim.firmware.planner import Timing
from taxelsim.observability.trace import TraceFormat
from taxelsim.taxel.model import COLUMN_PORT_WIDTH, GridDims, SolenoidSpec


class DimsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rows: int = Field(default=16, ge=1, le=DECODER_LINES)
    cols: int = Field(default=16, ge=1, le=COLUMN_PORT_WIDTH)


class PowerConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    u_dc_v: float = Field(default=12.0, gt=0)
    duty: float = Field(default=0.5, gt=0, le=1)
    # None: follow timing.pulse_width_s
    pulse_width_s: float | None = Field(default=None, gt=0)
    # None: follow solenoid.coil_resistance_ohm
    coil_resistance_ohm: float | None = Field(default=None, gt=0)


class TimingConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pulse_width_s: float = Field(default=0.01, gt=0)
    settle_s: float = Field(default=0.005, gt=0)


class ThermalConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    c_per_joule: float = Field(default=5.0, ge=0)
    cooling_rate_per_s: float = Field(default=0.1, ge=0)
    ambient_c: float = 20.0


class SolenoidConfig(BaseModel):
    """Overrides for the solenoid data sheet values."""

    model_config = ConfigDict(extra="forbid")

    width_mm: float = Field(default=7.0, gt=0)
    depth_mm: float = Field(default=8.4, gt=0)
    height_mm: float = Field(default=23.0, gt=0)
    mass_g: float = Field(default=6.0, gt=0)
    holding_force_g: float = Field(default=500.0, gt=0)
    coil_resistance_ohm: float = Field(default=24.0, gt=0)
    nominal_dc_voltage_v: float = Field(default=12.0, gt=0)
    response_time_s: float = Field(default=0.004, gt=0)


class Config(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dims: DimsConfig = Field(default_factory=DimsConfig)
    power: PowerConfig = Field(default_factory=PowerConfig)
    timing: TimingConfig = Field(default_factory=TimingConfig)
    thermal: ThermalConfig = Field(default_factory=ThermalConfig)
    solenoid: SolenoidConfig = Field(default_factory=SolenoidConfig)

    strict_hazards: bool = False
    skip_reset_if_clear: bool = False
    trace_format: TraceFormat = TraceFormat.TSV

    @model_validator(mode="after")
    def validate_pulse_width(self) -> Config:
        widths = {"timing.pulse_width_s": self.timing.pulse_width_s}
        if self.power.pulse_width_s is not None:
            widths["power.pulse_width_s"] = self.power.pulse_width_s
        for key, width in widths.items():
            if width < self.solenoid.response_time_s:
                raise ValueError(
                    f"{key}={width} is shorter than the solenoid response time "
                    f"{self.solenoid.response_time_s}"
                )
        return self

    @model_validator(mode="after")
    def validate_coil_resistance(self) -> Config:
        power_r = self.power.coil_resistance_ohm
        solenoid_r = self.solenoid.coil_resistance_ohm
        explicit = "coil_resistance_ohm" in self.solenoid.model_fields_set
        if power_r is not None and explicit and power_r != solenoid_r:
            raise ValueError(
                f"power.coil_resistance_ohm={power_r} disagrees with "
                f"solenoid.coil_resistance_ohm={solenoid_r}"
            )
        return self

    @property
    def coil_resistance_ohm(self) -> float:
        """The one resistance used for pulse physics and the solenoid spec."""
        if self.power.coil_resistance_ohm is not None:
            return self.power.coil_resistance_ohm
        return self.solenoid.coil_resistance_ohm

    @property
    def grid_dims(self) -> GridDims:
        return GridDims(self.dims.rows, self.dims.cols)

    def power_params(self) -> PowerParams:
        return PowerParams(
            u_dc_v=self.power.u_dc_v,
            duty=self.power.duty,
            pulse_width_s=self.power.pulse_width_s or self.timing.pulse_width_s,
            coil_resistance_ohm=self.coil_resistance_ohm,
        )

    def timing_params(self) -> Timing:
        return Timing(pulse_width_s=self.timing.pulse_width_s, settle_s=self.timing.settle_s)

    def thermal_params(self) -> ThermalParams:
        return ThermalParams(
            c_per_joule=self.thermal.c_per_joule,
            cooling_rate_per_s=self.thermal.cooling_rate_per_s,
        )

    def solenoid_spec(self) -> SolenoidSpec:
        fields = self.solenoid.model_dump()
        fields["coil_resistance_ohm"] = self.coil_resistance_ohm
        return SolenoidSpec(**fields)

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(mode="json")
