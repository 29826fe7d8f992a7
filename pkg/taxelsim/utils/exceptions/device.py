from typing import Any

from .base import TaxelSimError


class BusyError(TaxelSimError):
    """A command arrived while a row scan was still in progress."""

    def __init__(self, state: str, command: str, **kwargs: Any) -> None:
        super().__init__(
            message=f"Controller busy ({state}); rejected {command}",
            code="BUSY",
            details={"state": state, "command": command},
            **kwargs,
        )
        self.state = state
        self.command = command


class HazardError(TaxelSimError):
    """Strict mode abort on the first gate-logic hazard."""

    def __init__(self, record: Any, **kwargs: Any) -> None:
        super().__init__(
            message=f"Hazard {record.kind.value} at step {record.step}",
            code="HAZARD",
            details={"step": record.step, "kind": record.kind.value},
            **kwargs,
        )
        self.record = record
