from typing import Any

from .base import TaxelSimError


class ProtocolError(TaxelSimError):
    """A frame on the host/display link could not be decoded or encoded.

    ``reason_code`` is the byte carried back to the host in a Nak response.
    """

    reason_code: int = 0xFF
    error_code: str = "PROTOCOL_ERROR"

    def __init__(self, message: str, **kwargs: Any) -> None:
        super().__init__(message=message, code=self.error_code, **kwargs)


class BadSofError(ProtocolError):
    reason_code = 0x01
    error_code = "BAD_SOF"


class BadChecksumError(ProtocolError):
    reason_code = 0x02
    error_code = "BAD_CHECKSUM"


class UnknownCommandError(ProtocolError):
    reason_code = 0x03
    error_code = "UNKNOWN_COMMAND"


class LengthMismatchError(ProtocolError):
    reason_code = 0x04
    error_code = "LENGTH_MISMATCH"


class BadDimsError(ProtocolError):
    reason_code = 0x05
    error_code = "BAD_DIMS"


class OversizedPayloadError(ProtocolError):
    reason_code = 0x06
    error_code = "OVERSIZED_PAYLOAD"
