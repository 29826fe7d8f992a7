from taxelsim.firmware.controller import (
    Controller,
    ControllerPhase,
    ControllerState,
    ScanPlan,
    boot,
    complete_scan,
    handle_command,
)
from taxelsim.firmware.device import SimulatedDisplay
from taxelsim.firmware.planner import (
    Phase,
    Schedule,
    Timing,
    WaveformStep,
    has_hazardous_pins,
    plan_clear,
    plan_show,
)
from taxelsim.firmware.runner import ScheduleResult, run_schedule

__all__ = [
    "Controller",
    "ControllerPhase",
    "ControllerState",
    "ScanPlan",
    "boot",
    "complete_scan",
    "handle_command",
    "SimulatedDisplay",
    "Phase",
    "Schedule",
    "Timing",
    "WaveformStep",
    "has_hazardous_pins",
    "plan_clear",
    "plan_show",
    "ScheduleResult",
    "run_schedule",
]
