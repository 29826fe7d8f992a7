"""Grade-1 six-dot Braille rendered onto the taxel grid.

Dots 1-3 run down the left column of a cell, 4-6 down the right. Each cell
takes a 3x2 block at the top-left of its pitch slot; the remaining row and
column of the slot are spacing.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from taxelsim.taxel.model import Bitmap, GridDims
from taxelsim.utils.exceptions import UnsupportedCharacterError, ValidationError

logger = logging.getLogger(__name__)

# dot number -> (row, col) inside the 3x2 block
DOT_POSITIONS = {1: (0, 0), 2: (1, 0), 3: (2, 0), 4: (0, 1), 5: (1, 1), 6: (2, 1)}

DEFAULT_PITCH = (4, 3)


@dataclass(frozen=True, slots=True)
class BrailleCell:
    """Bit ``n - 1`` of ``mask`` is dot ``n``."""

    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= 63:
            raise ValidationError("Braille mask must be in [0, 63]", field="mask", value=self.mask)

    @classmethod
    def from_dots(cls, *dots: int) -> BrailleCell:
        mask = 0
        for dot in dots:
            if dot not in DOT_POSITIONS:
                raise ValidationError(f"No Braille dot {dot}", field="dots", value=dot)
            mask |= 1 << (dot - 1)
        return cls(mask)

    @property
    def dots(self) -> tuple[int, ...]:
        return tuple(dot for dot in DOT_POSITIONS if self.mask & (1 << (dot - 1)))

    def positions(self) -> list[tuple[int, int]]:
        return [DOT_POSITIONS[dot] for dot in self.dots]


BLANK = BrailleCell(0)
NUMBER_SIGN = BrailleCell.from_dots(3, 4, 5, 6)
LETTER_SIGN = BrailleCell.from_dots(5, 6)

_FIRST_DECADE = {
    "a": (1,),
    "b": (1, 2),
    "c": (1, 4),
    "d": (1, 4, 5),
    "e": (1, 5),
    "f": (1, 2, 4),
    "g": (1, 2, 4, 5),
    "h": (1, 2, 5),
    "i": (2, 4),
    "j": (2, 4, 5),
}


def _letters() -> dict[str, BrailleCell]:
    table = {ch: BrailleCell.from_dots(*dots) for ch, dots in _FIRST_DECADE.items()}
    # k-t add dot 3 to a-j
    for offset, ch in enumerate("klmnopqrst"):
        base = _FIRST_DECADE["abcdefghij"[offset]]
        table[ch] = BrailleCell.from_dots(*base, 3)
    # u v x y z add dots 3 and 6 to a-e; w is out of sequence
    for offset, ch in enumerate("uvxyz"):
        base = _FIRST_DECADE["abcde"[offset]]
        table[ch] = BrailleCell.from_dots(*base, 3, 6)
    table["w"] = BrailleCell.from_dots(2, 4, 5, 6)
    return table


LETTERS = _letters()
DIGITS = {digit: LETTERS[letter] for digit, letter in zip("1234567890", "abcdefghij")}


@dataclass(frozen=True)
class BrailleRender:
    bitmap: Bitmap
    truncated: int = 0
    cells: list[BrailleCell] = field(default_factory=list)


def translate(text: str) -> list[tuple[int, BrailleCell]]:
    """Text to (source index, cell) pairs, with number and letter signs inserted.

    Raises:
        UnsupportedCharacterError: anything but letters, digits and space.
    """
    cells: list[tuple[int, BrailleCell]] = []
    numeric = False
    for index, char in enumerate(text.lower()):
        if char == " ":
            numeric = False
            cells.append((index, BLANK))
        elif char in DIGITS:
            if not numeric:
                cells.append((index, NUMBER_SIGN))
                numeric = True
            cells.append((index, DIGITS[char]))
        elif char in LETTERS:
            if numeric and char in _FIRST_DECADE:
                cells.append((index, LETTER_SIGN))
            numeric = False
            cells.append((index, LETTERS[char]))
        else:
            raise UnsupportedCharacterError(text[index], index)
    return cells


def cell_capacity(dims: GridDims, pitch: tuple[int, int] = DEFAULT_PITCH) -> tuple[int, int]:
    """(cell rows, cells per row) that fit on ``dims``."""
    pitch_rows, pitch_cols = pitch
    if pitch_rows < 3 or pitch_cols < 2:
        raise ValidationError("Cell pitch must be at least 3x2", field="pitch", value=pitch)
    cell_rows = (dims.rows - 3) // pitch_rows + 1 if dims.rows >= 3 else 0
    per_row = (dims.cols - 2) // pitch_cols + 1 if dims.cols >= 2 else 0
    return cell_rows, per_row


def render_braille(
    text: str,
    dims: GridDims,
    pitch: tuple[int, int] = DEFAULT_PITCH,
) -> BrailleRender:
    """Lay ``text`` out left to right, wrapping by cell row.

    A character whose cells do not all fit is dropped together with
    everything after it; ``truncated`` counts the dropped characters.
    """
    cells = translate(text)
    cell_rows, per_row = cell_capacity(dims, pitch)
    capacity = cell_rows * per_row

    truncated = 0
    if len(cells) > capacity:
        first_dropped = cells[capacity][0]
        cells = [(index, cell) for index, cell in cells if index < first_dropped]
        truncated = len(text) - first_dropped
        logger.info(f"Braille text truncated by {truncated} characters on {dims}")

    coords: list[tuple[int, int]] = []
    for slot, (_, cell) in enumerate(cells):
        top = (slot // per_row) * pitch[0]
        left = (slot % per_row) * pitch[1]
        coords.extend((top + dr, left + dc) for dr, dc in cell.positions())

    return BrailleRender(
        bitmap=Bitmap.from_coords(dims, coords),
        truncated=truncated,
        cells=[cell for _, cell in cells],
    )
