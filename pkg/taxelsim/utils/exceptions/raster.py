from typing import Any

from .base import TaxelSimError


class RasterError(TaxelSimError):
    """Image or text could not be turned into a frame."""

    error_code: str = "RASTER_ERROR"

    def __init__(self, message: str, **kwargs: Any) -> None:
        super().__init__(message=message, code=self.error_code, **kwargs)


class MalformedHeaderError(RasterError):
    error_code = "MALFORMED_HEADER"


class TruncatedDataError(RasterError):
    error_code = "TRUNCATED_DATA"


class UnsupportedMagicError(RasterError):
    error_code = "UNSUPPORTED_MAGIC"


class UnsupportedCharacterError(RasterError):
    error_code = "UNSUPPORTED_CHARACTER"

    def __init__(self, char: str, position: int) -> None:
        super().__init__(
            f"Unsupported character {char!r} at position {position}",
            details={"char": char, "position": position},
        )
        self.char = char
        self.position = position
