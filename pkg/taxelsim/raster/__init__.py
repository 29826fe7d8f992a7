from taxelsim.raster.braille import BrailleCell, BrailleRender, render_braille, translate
from taxelsim.raster.image import (
    BAYER_4X4,
    GrayImage,
    bitmap_to_gray,
    box_scale,
    frame_from_text,
    invert,
    ordered_dither,
    threshold,
)
from taxelsim.raster.pnm import load_pbm, load_pbm_file

__all__ = [
    "BrailleCell",
    "BrailleRender",
    "render_braille",
    "translate",
    "BAYER_4X4",
    "GrayImage",
    "bitmap_to_gray",
    "box_scale",
    "frame_from_text",
    "invert",
    "ordered_dither",
    "threshold",
    "load_pbm",
    "load_pbm_file",
]
