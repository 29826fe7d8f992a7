"""Display controller state machine.

Power-on leaves the controller Ready. SHOW scans rows to bring up an image
(Displayed when done); CLEAR scans rows back to the initial state (Ready).
SHOW onto a displayed image runs a full clear first and chains into the
show. Scans are never pre-empted: SHOW/CLEAR mid-scan are Busy, STATUS and
PING are pure observers and always answered.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import IntEnum

from taxelsim.firmware.planner import Schedule, Timing, plan_clear, plan_show
from taxelsim.protocol.messages import (
    ClearCommand,
    Command,
    PingCommand,
    ShowCommand,
    StatusCommand,
)
from taxelsim.taxel.model import Bitmap, GridDims
from taxelsim.utils.exceptions import BusyError, DimensionMismatchError

logger = logging.getLogger(__name__)


class ControllerPhase(IntEnum):
    """Values double as the STATUS state byte."""

    READY = 0
    SCANNING_SET = 1
    DISPLAYED = 2
    SCANNING_RESET = 3


@dataclass(frozen=True, slots=True)
class ControllerState:
    phase: ControllerPhase
    row_cursor: int = 0
    # Frame being shown (ScanningSet) or queued behind the clear (ScanningReset).
    pending: Bitmap | None = None
    # Frame most recently completed (Displayed).
    current: Bitmap | None = None

    @property
    def scanning(self) -> bool:
        return self.phase in (ControllerPhase.SCANNING_SET, ControllerPhase.SCANNING_RESET)

    @classmethod
    def ready(cls) -> ControllerState:
        return cls(ControllerPhase.READY)


def boot(dims: GridDims) -> ControllerState:
    """Power-on: Ready immediately, nothing emitted, display untouched."""
    logger.info(f"Controller booted for {dims} grid")
    return ControllerState.ready()


@dataclass(frozen=True, slots=True)
class ScanPlan:
    """Everything the controller needs to plan a scan."""

    dims: GridDims
    timing: Timing
    skip_reset_if_clear: bool = False


def handle_command(
    state: ControllerState,
    cmd: Command,
    plan: ScanPlan,
    shadow: Bitmap,
) -> tuple[ControllerState, Schedule]:
    """Next state and the schedule to execute for one decoded command.

    Raises:
        BusyError: SHOW or CLEAR while a scan is in progress.
        DimensionMismatchError: SHOW frame does not match the grid.
    """
    if isinstance(cmd, (StatusCommand, PingCommand)):
        return state, []

    if state.scanning:
        raise BusyError(state.phase.name, type(cmd).__name__)

    if isinstance(cmd, ShowCommand):
        frame = cmd.frame
        if frame.dims != plan.dims:
            raise DimensionMismatchError(plan.dims, frame.dims)
        if state.phase is ControllerPhase.DISPLAYED:
            next_state = ControllerState(ControllerPhase.SCANNING_RESET, 0, pending=frame)
            return next_state, plan_clear(plan.dims, plan.timing)
        next_state = ControllerState(ControllerPhase.SCANNING_SET, 0, pending=frame)
        return next_state, plan_show(frame, plan.timing, plan.skip_reset_if_clear, shadow)

    if isinstance(cmd, ClearCommand):
        next_state = ControllerState(ControllerPhase.SCANNING_RESET, 0)
        return next_state, plan_clear(plan.dims, plan.timing)

    raise TypeError(f"Not a command: {cmd!r}")


def complete_scan(
    state: ControllerState,
    plan: ScanPlan,
    shadow: Bitmap,
) -> tuple[ControllerState, Schedule]:
    """Transition at the end of a schedule; may chain a follow-up schedule."""
    done = replace(state, row_cursor=plan.dims.rows)
    if done.phase is ControllerPhase.SCANNING_SET:
        return ControllerState(ControllerPhase.DISPLAYED, current=done.pending), []
    if done.phase is ControllerPhase.SCANNING_RESET:
        if done.pending is not None:
            frame = done.pending
            next_state = ControllerState(ControllerPhase.SCANNING_SET, 0, pending=frame)
            return next_state, plan_show(frame, plan.timing, plan.skip_reset_if_clear, shadow)
        return ControllerState.ready(), []
    return state, []


class Controller:
    """Stateful wrapper that also tracks the shadow frame."""

    def __init__(self, plan: ScanPlan) -> None:
        self.plan = plan
        self.state = boot(plan.dims)
        self.shadow = Bitmap.blank(plan.dims)

    def handle(self, cmd: Command) -> Schedule:
        self.state, schedule = handle_command(self.state, cmd, self.plan, self.shadow)
        if schedule:
            logger.info(f"{type(cmd).__name__}: {self.state.phase.name}, {len(schedule)} steps")
        return schedule

    def advance(self, row: int) -> None:
        """Record that the scan has finished ``row``."""
        if self.state.scanning:
            self.state = replace(self.state, row_cursor=min(row + 1, self.plan.dims.rows))

    def complete(self) -> Schedule:
        finished = self.state
        if finished.phase is ControllerPhase.SCANNING_SET and finished.pending is not None:
            self.shadow = finished.pending
        elif finished.phase is ControllerPhase.SCANNING_RESET:
            self.shadow = Bitmap.blank(self.plan.dims)
        self.state, schedule = complete_scan(finished, self.plan, self.shadow)
        return schedule

    def abort(self) -> None:
        """Drop an interrupted scan; the controller falls back to Ready.

        The grid may be partly rewritten, so the shadow becomes all-raised:
        the next scan resets every row even with skip-reset enabled.
        """
        logger.warning(f"Scan aborted in {self.state.phase.name} at row {self.state.row_cursor}")
        self.state = ControllerState.ready()
        self.shadow = Bitmap.blank(self.plan.dims).complement()
