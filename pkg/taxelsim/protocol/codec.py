"""Byte-exact framing for the host/display link.

Frame: ``A5 | code | length | payload[length] | checksum`` where checksum is
the XOR of every byte from ``code`` through the last payload byte. There is
no byte stuffing; the length field delimits the payload, and decoders
resynchronise by scanning for the next ``A5``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from functools import reduce

from taxelsim.protocol.messages import (
    AckResponse,
    BusyResponse,
    ClearCommand,
    Message,
    MessageCode,
    NakResponse,
    PingCommand,
    PongResponse,
    ShowCommand,
    StatusCommand,
    StatusResponse,
)
from taxelsim.taxel.model import REFERENCE_DIMS, Bitmap, GridDims
from taxelsim.utils.exceptions import (
    BadChecksumError,
    BadDimsError,
    BadSofError,
    LengthMismatchError,
    OversizedPayloadError,
    ProtocolError,
    UnknownCommandError,
)

logger = logging.getLogger(__name__)

SOF = 0xA5
HEADER_LEN = 3
MAX_PAYLOAD = 0xFF
STATUS_FIXED_LEN = 5

_EMPTY_MESSAGES: dict[MessageCode, Message] = {
    MessageCode.CLEAR: ClearCommand(),
    MessageCode.STATUS: StatusCommand(),
    MessageCode.PING: PingCommand(),
    MessageCode.ACK: AckResponse(),
    MessageCode.BUSY: BusyResponse(),
    MessageCode.PONG: PongResponse(),
}


def checksum(data: Iterable[int]) -> int:
    """XOR fold; the empty fold is 0."""
    return reduce(lambda acc, byte: acc ^ byte, data, 0)


def _payload(msg: Message) -> bytes:
    if isinstance(msg, ShowCommand):
        return msg.frame.to_bytes()
    if isinstance(msg, StatusResponse):
        return (
            bytes([msg.state_code])
            + msg.set_pulses.to_bytes(2, "big")
            + msg.reset_pulses.to_bytes(2, "big")
            + msg.shadow.to_bytes()
        )
    if isinstance(msg, NakResponse):
        return bytes([msg.reason_code])
    return b""


def encode(msg: Message) -> bytes:
    payload = _payload(msg)
    if len(payload) > MAX_PAYLOAD:
        raise OversizedPayloadError(
            f"Payload of {len(payload)} bytes exceeds {MAX_PAYLOAD}",
            details={"length": len(payload)},
        )
    body = bytes([msg.code, len(payload)]) + payload
    return bytes([SOF]) + body + bytes([checksum(body)])


def expected_length(code: MessageCode, dims: GridDims) -> int:
    if code is MessageCode.SHOW:
        return dims.frame_bytes
    if code is MessageCode.STATUS_REPORT:
        return STATUS_FIXED_LEN + dims.frame_bytes
    if code is MessageCode.NAK:
        return 1
    return 0


def _check_header(data: bytes, dims: GridDims) -> tuple[MessageCode, int]:
    """Validate SOF, code and length byte; returns (code, payload length)."""
    if not data or data[0] != SOF:
        raise BadSofError(
            "Frame does not start with SOF", details={"byte": data[0] if data else None}
        )
    if len(data) < HEADER_LEN:
        raise LengthMismatchError("Truncated frame header", details={"available": len(data)})
    try:
        code = MessageCode(data[1])
    except ValueError as e:
        raise UnknownCommandError(
            f"Unknown message code 0x{data[1]:02X}", details={"code": data[1]}
        ) from e
    length = data[2]
    wanted = expected_length(code, dims)
    if length != wanted:
        carries_frame = code in (MessageCode.SHOW, MessageCode.STATUS_REPORT)
        error_cls = BadDimsError if carries_frame else LengthMismatchError
        raise error_cls(
            f"{code.name} payload must be {wanted} bytes, got {length}",
            details={"expected": wanted, "length": length, "dims": str(dims)},
        )
    return code, length


def _build(code: MessageCode, payload: bytes, dims: GridDims) -> Message:
    if code in _EMPTY_MESSAGES:
        return _EMPTY_MESSAGES[code]
    if code is MessageCode.SHOW:
        return ShowCommand(Bitmap.from_bytes(dims, payload))
    if code is MessageCode.NAK:
        return NakResponse(payload[0])
    return StatusResponse(
        state_code=payload[0],
        set_pulses=int.from_bytes(payload[1:3], "big"),
        reset_pulses=int.from_bytes(payload[3:5], "big"),
        shadow=Bitmap.from_bytes(dims, payload[STATUS_FIXED_LEN:]),
    )


def decode_frame(data: bytes, dims: GridDims = REFERENCE_DIMS) -> tuple[Message, int]:
    """Decode the frame at the start of ``data``; returns (message, bytes consumed).

    Raises:
        ProtocolError: BadSof, UnknownCommand, LengthMismatch (including a
            truncated frame), BadDims or BadChecksum.
    """
    code, length = _check_header(data, dims)
    end = HEADER_LEN + length
    if len(data) < end + 1:
        raise LengthMismatchError(
            f"Truncated frame: need {end + 1} bytes, have {len(data)}",
            details={"needed": end + 1, "available": len(data)},
        )
    expected = checksum(data[1:end])
    if data[end] != expected:
        raise BadChecksumError(
            f"Checksum 0x{data[end]:02X} != 0x{expected:02X}",
            details={"received": data[end], "expected": expected},
        )
    return _build(code, bytes(data[HEADER_LEN:end]), dims), end + 1


def decode(data: bytes, dims: GridDims = REFERENCE_DIMS) -> Message:
    """Decode one frame; bytes after it are ignored (see :class:`StreamDecoder`)."""
    message, _ = decode_frame(data, dims)
    return message


class StreamDecoder:
    """Incremental decoder over a byte stream, single owner.

    Junk before a SOF is skipped; a frame that fails validation costs only
    its SOF byte, after which scanning resumes.
    """

    def __init__(self, dims: GridDims = REFERENCE_DIMS) -> None:
        self.dims = dims
        self._buffer = bytearray()
        self.errors: list[ProtocolError] = []

    @property
    def pending(self) -> bytes:
        return bytes(self._buffer)

    def feed(self, data: bytes) -> list[Message]:
        self._buffer.extend(data)
        return self._drain(final=False)

    def flush(self) -> list[Message]:
        """End of stream: give up on incomplete frames and rescan past them."""
        return self._drain(final=True)

    def _drain(self, final: bool) -> list[Message]:
        messages: list[Message] = []
        while True:
            start = self._buffer.find(SOF)
            if start < 0:
                self._buffer.clear()
                return messages
            if start:
                logger.debug(f"Skipping {start} junk bytes")
                del self._buffer[:start]
            try:
                message, consumed = decode_frame(bytes(self._buffer), self.dims)
            except LengthMismatchError as e:
                if not final and self._incomplete():
                    return messages
                self._reject(e)
                continue
            except ProtocolError as e:
                self._reject(e)
                continue
            del self._buffer[:consumed]
            messages.append(message)

    def _incomplete(self) -> bool:
        """True when the header checks out but the frame body has not all arrived."""
        if len(self._buffer) < HEADER_LEN:
            return True
        try:
            _, length = _check_header(bytes(self._buffer), self.dims)
        except ProtocolError:
            return False
        return len(self._buffer) < HEADER_LEN + length + 1

    def _reject(self, error: ProtocolError) -> None:
        logger.debug(f"Dropping SOF after decode error: {error}")
        self.errors.append(error)
        del self._buffer[:1]
