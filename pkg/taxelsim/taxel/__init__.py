from taxelsim.taxel.model import (
    COLUMN_PORT_WIDTH,
    REFERENCE_DIMS,
    Bitmap,
    GridDims,
    GridState,
    Plunger,
    SolenoidSpec,
    SolenoidState,
    bitmap_diff,
    new_grid,
    snapshot,
)

__all__ = [
    "COLUMN_PORT_WIDTH",
    "REFERENCE_DIMS",
    "Bitmap",
    "GridDims",
    "GridState",
    "Plunger",
    "SolenoidSpec",
    "SolenoidState",
    "bitmap_diff",
    "new_grid",
    "snapshot",
]
