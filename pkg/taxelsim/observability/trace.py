"""Per-step trace records and the trace file writer.

TSV field order (one line per waveform step, header line first):
step, phase, row_addr, row_enable, mode, col_bits, set, reset, joules, hazards.
Coordinate lists are ``r,c;r,c`` and ``-`` when empty.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import asdict, dataclass
from enum import Enum
from pathlib import Path
from typing import Any

import orjson

logger = logging.getLogger(__name__)

TSV_FIELDS = (
    "step",
    "phase",
    "row_addr",
    "row_enable",
    "mode",
    "col_bits",
    "set",
    "reset",
    "joules",
    "hazards",
)


class TraceFormat(str, Enum):
    TSV = "tsv"
    JSONL = "jsonl"


def _coords_text(coords: Iterable[tuple[int, int]]) -> str:
    return ";".join(f"{r},{c}" for r, c in coords) or "-"


@dataclass(frozen=True, slots=True)
class TraceRecord:
    step: int
    phase: str
    row_addr: int
    row_enable: bool
    mode: bool
    col_bits: int
    set_coords: tuple[tuple[int, int], ...]
    reset_coords: tuple[tuple[int, int], ...]
    joules: float
    hazards: tuple[str, ...] = ()

    def to_tsv(self) -> str:
        values = (
            str(self.step),
            self.phase,
            str(self.row_addr),
            str(int(self.row_enable)),
            str(int(self.mode)),
            f"{self.col_bits:04X}",
            _coords_text(self.set_coords),
            _coords_text(self.reset_coords),
            f"{self.joules:.6f}",
            ",".join(self.hazards) or "-",
        )
        return "\t".join(values)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["col_bits"] = f"{self.col_bits:04X}"
        data["set_coords"] = [list(c) for c in self.set_coords]
        data["reset_coords"] = [list(c) for c in self.reset_coords]
        data["hazards"] = list(self.hazards)
        return data


class TraceWriter:
    """Writes trace records to a file, deterministically.

    Example:
        writer = TraceWriter(Path("run.tsv"))
        writer.write(records)
    """

    def __init__(self, path: str | Path, fmt: TraceFormat = TraceFormat.TSV) -> None:
        self.path = Path(path).expanduser()
        self.format = fmt

    def render(self, records: Iterable[TraceRecord]) -> bytes:
        if self.format is TraceFormat.JSONL:
            return b"".join(
                orjson.dumps(record.to_dict(), option=orjson.OPT_SORT_KEYS) + b"\n"
                for record in records
            )
        lines = ["\t".join(TSV_FIELDS)]
        lines.extend(record.to_tsv() for record in records)
        return ("\n".join(lines) + "\n").encode("utf-8")

    def write(self, records: Iterable[TraceRecord]) -> Path:
        records = list(records)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_bytes(self.render(records))
        logger.info(f"Wrote {len(records)} trace records to {self.path}")
        return self.path
