"""taxelsim - deterministic simulator of a bi-stable solenoid tactile display."""

__version__ = "1.0.0"

from taxelsim.taxel.model import Bitmap, GridDims, SolenoidSpec

__all__ = [
    "__version__",
    "Bitmap",
    "GridDims",
    "SolenoidSpec",
]
