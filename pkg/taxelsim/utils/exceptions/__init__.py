from .base import TaxelSimError
from .config import ConfigError, DimensionMismatchError, ValidationError
from .device import BusyError, HazardError
from .protocol import (
    BadChecksumError,
    BadDimsError,
    BadSofError,
    LengthMismatchError,
    OversizedPayloadError,
    ProtocolError,
    UnknownCommandError,
)
from .raster import (
    MalformedHeaderError,
    RasterError,
    TruncatedDataError,
    UnsupportedCharacterError,
    UnsupportedMagicError,
)

__all__ = [
    "TaxelSimError",
    "ConfigError",
    "ValidationError",
    "DimensionMismatchError",
    "BusyError",
    "HazardError",
    "ProtocolError",
    "BadSofError",
    "BadChecksumError",
    "UnknownCommandError",
    "LengthMismatchError",
    "BadDimsError",
    "OversizedPayloadError",
    "RasterError",
    "MalformedHeaderError",
    "TruncatedDataError",
    "UnsupportedMagicError",
    "UnsupportedCharacterError",
]
