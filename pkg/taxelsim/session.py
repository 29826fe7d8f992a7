"""DisplaySession - a host talking to one simulated display over the loopback link."""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import partial
from pathlib import Path

from taxelsim.circuit.budget import resource_budget
from taxelsim.circuit.gates import REFERENCE_GATES, GateLogic
from taxelsim.circuit.hazards import HazardReport
from taxelsim.config.config import Config
from taxelsim.firmware.device import SimulatedDisplay
from taxelsim.observability.stats import RunStats
from taxelsim.observability.trace import TraceFormat, TraceRecord, TraceWriter
from taxelsim.protocol.messages import (
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
)
from taxelsim.protocol.transport import HostLink, LoopbackTransport
from taxelsim.taxel.model import Bitmap
from taxelsim.utils.exceptions import BusyError, ProtocolError

logger = logging.getLogger(__name__)


def display_factory(
    config: Config,
    *,
    gates: GateLogic = REFERENCE_GATES,
    strict: bool | None = None,
    record_trace: bool = True,
) -> Callable[[], SimulatedDisplay]:
    """Boots a new display per call; the config is resolved once, up front."""
    return partial(
        SimulatedDisplay,
        config.grid_dims,
        power=config.power_params(),
        timing=config.timing_params(),
        thermal=config.thermal_params(),
        ambient_c=config.thermal.ambient_c,
        spec=config.solenoid_spec(),
        skip_reset_if_clear=config.skip_reset_if_clear,
        strict=config.strict_hazards if strict is None else strict,
        gates=gates,
        record_trace=record_trace,
    )


def build_display(
    config: Config,
    *,
    gates: GateLogic = REFERENCE_GATES,
    strict: bool | None = None,
    record_trace: bool = True,
) -> SimulatedDisplay:
    """A freshly booted display configured from ``config``."""
    return display_factory(config, gates=gates, strict=strict, record_trace=record_trace)()


class DisplaySession:
    """Every command goes through the real codec: encode, loopback, decode, execute.

    Composition:
    - SimulatedDisplay: controller, circuit and solenoid board
    - LoopbackTransport + HostLink: the host end of the link
    - RunStats: collected on demand from the display's ledger and hazards
    """

    def __init__(self, config: Config, gates: GateLogic = REFERENCE_GATES) -> None:
        self.config = config
        self.display = build_display(config, gates=gates)
        self.transport = LoopbackTransport()
        self.display.attach(self.transport.device)
        self.link = HostLink(self.transport.host, self.display.poll, config.grid_dims)
        self.budget = resource_budget(config.grid_dims)
        logger.info(f"Session started for {config.grid_dims} display ({gates.name} gates)")

    def request(self, cmd: Command) -> Response:
        response = self.link.request(cmd)
        logger.debug(f"{type(cmd).__name__} -> {type(response).__name__}")
        return response

    def _expect_ack(self, cmd: Command) -> None:
        response = self.request(cmd)
        if isinstance(response, BusyResponse):
            raise BusyError(self.display.state.phase.name, type(cmd).__name__)
        if isinstance(response, NakResponse):
            raise ProtocolError(
                f"Display rejected {type(cmd).__name__}",
                details={"reason_code": f"0x{response.reason_code:02X}"},
            )

    def show(self, frame: Bitmap) -> None:
        """Show ``frame``; returns once the scan (and any chained clear) is done."""
        self._expect_ack(ShowCommand(frame))

    def clear(self) -> None:
        self._expect_ack(ClearCommand())

    def status(self) -> StatusResponse:
        response = self.request(StatusCommand())
        if not isinstance(response, StatusResponse):
            raise ProtocolError(f"Expected a status report, got {type(response).__name__}")
        return response

    def ping(self) -> bool:
        return isinstance(self.request(PingCommand()), PongResponse)

    def snapshot(self) -> Bitmap:
        return self.display.snapshot()

    @property
    def hazards(self) -> HazardReport:
        return self.display.hazards

    @property
    def trace(self) -> list[TraceRecord]:
        return self.display.trace

    def stats(self) -> RunStats:
        return RunStats.collect(
            self.budget,
            self.display.ledger,
            self.display.hazards,
            steps=self.display.steps,
            simulated_time_s=self.display.elapsed_s,
            max_temperature_c=self.display.max_temperature_c,
        )

    def write_trace(self, path: str | Path, fmt: TraceFormat | None = None) -> Path:
        writer = TraceWriter(path, fmt or self.config.trace_format)
        return writer.write(self.display.trace)
