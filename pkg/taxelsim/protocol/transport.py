"""Ordered, reliable byte-stream transports and the host side of the link."""

from __future__ import annotations

import abc
import logging
from collections.abc import Callable

from taxelsim.protocol.codec import StreamDecoder, encode
from taxelsim.protocol.messages import (
    AckResponse,
    BusyResponse,
    Command,
    NakResponse,
    PongResponse,
    Response,
    StatusResponse,
)
from taxelsim.taxel.model import REFERENCE_DIMS, GridDims
from taxelsim.utils.exceptions import ProtocolError

logger = logging.getLogger(__name__)

_RESPONSE_TYPES = (AckResponse, BusyResponse, StatusResponse, PongResponse, NakResponse)


class Transport(abc.ABC):
    """One end of a byte stream."""

    @abc.abstractmethod
    def write(self, data: bytes) -> None:
        pass

    @abc.abstractmethod
    def read(self) -> bytes:
        """Everything received so far; empty when nothing is waiting."""


class _LoopbackEnd(Transport):
    def __init__(self, inbox: bytearray, outbox: bytearray) -> None:
        self._inbox = inbox
        self._outbox = outbox

    def write(self, data: bytes) -> None:
        self._outbox.extend(data)

    def read(self) -> bytes:
        data = bytes(self._inbox)
        self._inbox.clear()
        return data


class LoopbackTransport:
    """In-memory pair of connected ends: bytes written on one are read on the other."""

    def __init__(self) -> None:
        to_device = bytearray()
        to_host = bytearray()
        self.host: Transport = _LoopbackEnd(inbox=to_host, outbox=to_device)
        self.device: Transport = _LoopbackEnd(inbox=to_device, outbox=to_host)


class HostLink:
    """Sends commands and waits for the matching response.

    ``service`` runs the far end until it has answered; on a loopback it is
    the simulated display's poll method.
    """

    def __init__(
        self,
        transport: Transport,
        service: Callable[[], None],
        dims: GridDims = REFERENCE_DIMS,
    ) -> None:
        self.transport = transport
        self.service = service
        self.decoder = StreamDecoder(dims)

    def request(self, cmd: Command) -> Response:
        frame = encode(cmd)
        logger.debug(f"Host -> display: {frame.hex(' ')}")
        self.transport.write(frame)
        self.service()

        messages = self.decoder.feed(self.transport.read()) or self.decoder.flush()
        responses = [m for m in messages if isinstance(m, _RESPONSE_TYPES)]
        if not responses:
            raise ProtocolError(f"No response to {type(cmd).__name__}")
        return responses[-1]
