from taxelsim.circuit.budget import ResourceBudget, resource_budget
from taxelsim.circuit.gates import (
    MUTANT_AND_SET_GATE,
    REFERENCE_GATES,
    Coil,
    CoilExcitation,
    GateLogic,
    PinState,
    column_gate,
    decode_row,
    excite,
)
from taxelsim.circuit.hazards import (
    HazardKind,
    HazardMonitor,
    HazardRecord,
    HazardReport,
    scan_hazards,
)
from taxelsim.circuit.physics import (
    EnergyLedger,
    PowerParams,
    ThermalParams,
    apply_press,
    apply_pulse,
    excitation_joules,
    pulse_current,
    pulse_energy,
    pulse_voltage,
    thermal_step,
    thermal_step_grid,
)

__all__ = [
    "ResourceBudget",
    "resource_budget",
    "MUTANT_AND_SET_GATE",
    "REFERENCE_GATES",
    "Coil",
    "CoilExcitation",
    "GateLogic",
    "PinState",
    "column_gate",
    "decode_row",
    "excite",
    "HazardKind",
    "HazardMonitor",
    "HazardRecord",
    "HazardReport",
    "scan_hazards",
    "EnergyLedger",
    "PowerParams",
    "ThermalParams",
    "apply_press",
    "apply_pulse",
    "excitation_joules",
    "pulse_current",
    "pulse_energy",
    "pulse_voltage",
    "thermal_step",
    "thermal_step_grid",
]
