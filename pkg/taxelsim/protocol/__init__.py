from taxelsim.protocol.codec import (
    SOF,
    StreamDecoder,
    checksum,
    decode,
    decode_frame,
    encode,
)
from taxelsim.protocol.messages import (
    AckResponse,
    BusyResponse,
    ClearCommand,
    Command,
    Message,
    MessageCode,
    NakResponse,
    PingCommand,
    PongResponse,
    Response,
    ShowCommand,
    StatusCommand,
    StatusResponse,
)
from taxelsim.protocol.transport import HostLink, LoopbackTransport, Transport

__all__ = [
    "SOF",
    "StreamDecoder",
    "checksum",
    "decode",
    "decode_frame",
    "encode",
    "AckResponse",
    "BusyResponse",
    "ClearCommand",
    "Command",
    "Message",
    "MessageCode",
    "NakResponse",
    "PingCommand",
    "PongResponse",
    "Response",
    "ShowCommand",
    "StatusCommand",
    "StatusResponse",
    "HostLink",
    "LoopbackTransport",
    "Transport",
]
