"""The simulated display: controller firmware, addressing circuit and solenoid board."""

from __future__ import annotations

import logging

from taxelsim.circuit.gates import REFERENCE_GATES, GateLogic
from taxelsim.circuit.hazards import HazardMonitor, HazardReport
from taxelsim.circuit.physics import EnergyLedger, PowerParams, ThermalParams, apply_press
from taxelsim.firmware.controller import Controller, ControllerState, ScanPlan
from taxelsim.firmware.planner import Phase, Schedule, Timing, WaveformStep
from taxelsim.firmware.runner import run_schedule
from taxelsim.observability.trace import TraceRecord
from taxelsim.protocol.codec import StreamDecoder, encode
from taxelsim.protocol.messages import (
    AckResponse,
    BusyResponse,
    ClearCommand,
    Command,
    NakResponse,
    PingCommand,
    PongResponse,
    Response,
    ShowCommand,
    StatusCommand,
    StatusResponse,
    saturate_u16,
)
from taxelsim.protocol.transport import Transport
from taxelsim.taxel.model import (
    REFERENCE_DIMS,
    Bitmap,
    GridDims,
    SolenoidSpec,
    new_grid,
    snapshot,
)
from taxelsim.utils.exceptions import BadDimsError, BusyError, DimensionMismatchError, HazardError

logger = logging.getLogger(__name__)

_COMMAND_TYPES = (ShowCommand, ClearCommand, StatusCommand, PingCommand)


class SimulatedDisplay:
    """Runs every accepted command to completion before answering it."""

    def __init__(
        self,
        dims: GridDims = REFERENCE_DIMS,
        *,
        power: PowerParams | None = None,
        timing: Timing | None = None,
        thermal: ThermalParams | None = None,
        ambient_c: float = 20.0,
        spec: SolenoidSpec | None = None,
        skip_reset_if_clear: bool = False,
        strict: bool = False,
        gates: GateLogic = REFERENCE_GATES,
        record_trace: bool = True,
    ) -> None:
        self.dims = dims
        self.power = power or PowerParams()
        self.timing = timing or Timing()
        self.thermal = thermal or ThermalParams()
        self.ambient_c = ambient_c
        self.spec = spec or SolenoidSpec()
        self.gates = gates
        self.record_trace = record_trace

        self.controller = Controller(ScanPlan(dims, self.timing, skip_reset_if_clear))
        self.grid = new_grid(dims, ambient_c)
        self.ledger = EnergyLedger()
        self.monitor = HazardMonitor(strict=strict)
        self.trace: list[TraceRecord] = []
        self.steps = 0
        self.elapsed_s = 0.0
        self.max_temperature_c = ambient_c

        self._transport: Transport | None = None
        self._decoder = StreamDecoder(dims)

    @property
    def state(self) -> ControllerState:
        return self.controller.state

    @property
    def hazards(self) -> HazardReport:
        return self.monitor.report

    def snapshot(self) -> Bitmap:
        return snapshot(self.grid)

    def execute(self, cmd: Command) -> Response:
        """Handle one decoded command and return the response to send.

        Raises:
            HazardError: strict mode and a scan step was hazardous.
        """
        if isinstance(cmd, StatusCommand):
            return self.status()
        if isinstance(cmd, PingCommand):
            return PongResponse()
        try:
            schedule = self.controller.handle(cmd)
        except BusyError as e:
            logger.info(f"Rejected: {e}")
            return BusyResponse()
        except DimensionMismatchError as e:
            logger.info(f"Rejected: {e}")
            return NakResponse(BadDimsError.reason_code)
        self.run(schedule)
        return AckResponse()

    def status(self) -> StatusResponse:
        return StatusResponse(
            state_code=int(self.controller.state.phase),
            set_pulses=saturate_u16(self.ledger.set_pulses),
            reset_pulses=saturate_u16(self.ledger.reset_pulses),
            shadow=self.controller.shadow,
        )

    def run(self, schedule: Schedule) -> None:
        """Execute a schedule and every schedule the controller chains after it."""
        while schedule:
            try:
                result = run_schedule(
                    schedule,
                    self.grid,
                    self.power,
                    self.ledger,
                    self.monitor,
                    thermal=self.thermal,
                    ambient_c=self.ambient_c,
                    gates=self.gates,
                    start_step=self.steps,
                    record_trace=self.record_trace,
                    on_step=self._on_step,
                )
            except HazardError:
                self.controller.abort()
                raise
            self.steps += result.steps
            self.elapsed_s += result.elapsed_s
            self.max_temperature_c = max(self.max_temperature_c, result.max_temperature_c)
            self.trace.extend(result.trace)
            schedule = self.controller.complete()

    def _on_step(self, index: int, step: WaveformStep) -> None:
        if step.phase is Phase.IDLE:
            self.controller.advance(step.pins.row_addr)

    def press(self, row: int, col: int, force_g: float) -> bool:
        """Press one taxel; returns True when the plunger was knocked down."""
        before = self.grid.cell(row, col)
        after = apply_press(before, force_g, self.spec)
        self.grid.replace_cell(row, col, after)
        return after.plunger is not before.plunger

    def attach(self, transport: Transport) -> None:
        self._transport = transport

    def poll(self) -> None:
        """Service the attached transport: decode commands, answer each one."""
        if self._transport is None:
            return
        seen_errors = len(self._decoder.errors)
        messages = self._decoder.feed(self._transport.read())
        for error in self._decoder.errors[seen_errors:]:
            logger.info(f"Nak: {error}")
            self._transport.write(encode(NakResponse(error.reason_code)))
        for message in messages:
            if not isinstance(message, _COMMAND_TYPES):
                logger.debug(f"Ignoring non-command frame {type(message).__name__}")
                continue
            self._transport.write(encode(self.execute(message)))
