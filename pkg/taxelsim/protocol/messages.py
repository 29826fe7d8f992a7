"""Host/display link messages."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import ClassVar

from taxelsim.taxel.model import Bitmap
from taxelsim.utils.exceptions import ValidationError

U16_MAX = 0xFFFF


class MessageCode(IntEnum):
    SHOW = 0x01
    CLEAR = 0x02
    STATUS = 0x03
    PING = 0x04
    ACK = 0x81
    BUSY = 0x82
    STATUS_REPORT = 0x83
    PONG = 0x84
    NAK = 0x85


@dataclass(frozen=True, slots=True)
class ShowCommand:
    code: ClassVar[MessageCode] = MessageCode.SHOW
    frame: Bitmap


@dataclass(frozen=True, slots=True)
class ClearCommand:
    code: ClassVar[MessageCode] = MessageCode.CLEAR


@dataclass(frozen=True, slots=True)
class StatusCommand:
    code: ClassVar[MessageCode] = MessageCode.STATUS


@dataclass(frozen=True, slots=True)
class PingCommand:
    code: ClassVar[MessageCode] = MessageCode.PING


@dataclass(frozen=True, slots=True)
class AckResponse:
    code: ClassVar[MessageCode] = MessageCode.ACK


@dataclass(frozen=True, slots=True)
class BusyResponse:
    code: ClassVar[MessageCode] = MessageCode.BUSY


@dataclass(frozen=True, slots=True)
class StatusResponse:
    """Controller state byte, u16 pulse counters and the shadow frame."""

    code: ClassVar[MessageCode] = MessageCode.STATUS_REPORT
    state_code: int
    set_pulses: int
    reset_pulses: int
    shadow: Bitmap

    def __post_init__(self) -> None:
        if not 0 <= self.state_code <= 0xFF:
            raise ValidationError("state_code must fit a byte", field="state_code")
        for name in ("set_pulses", "reset_pulses"):
            if not 0 <= getattr(self, name) <= U16_MAX:
                raise ValidationError(f"{name} must fit a u16", field=name)


@dataclass(frozen=True, slots=True)
class PongResponse:
    code: ClassVar[MessageCode] = MessageCode.PONG


@dataclass(frozen=True, slots=True)
class NakResponse:
    code: ClassVar[MessageCode] = MessageCode.NAK
    reason_code: int

    def __post_init__(self) -> None:
        if not 0 <= self.reason_code <= 0xFF:
            raise ValidationError("reason_code must fit a byte", field="reason_code")


Command = ShowCommand | ClearCommand | StatusCommand | PingCommand
Response = AckResponse | BusyResponse | StatusResponse | PongResponse | NakResponse
Message = Command | Response


def saturate_u16(value: int) -> int:
    """Counters beyond the wire width are reported as 0xFFFF."""
    return min(value, U16_MAX)
