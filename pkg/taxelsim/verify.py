"""Correctness oracle: show frames on fresh or chained displays and read them back.

Exhaustive mode boots a new display for every frame of a small grid, shows
it, compares the snapshot, clears and checks the grid is blank again.
Random mode chains seeded random frames through one display, so every show
after the first goes through clear-then-show.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from taxelsim.circuit.gates import REFERENCE_GATES, GateLogic
from taxelsim.config.config import Config, DimsConfig
from taxelsim.firmware.device import SimulatedDisplay
from taxelsim.protocol.messages import AckResponse, ClearCommand, ShowCommand
from taxelsim.session import display_factory
from taxelsim.taxel.model import Bitmap, GridDims
from taxelsim.utils.exceptions import ValidationError

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_SIDE = 4


@dataclass(frozen=True)
class Counterexample:
    index: int
    stage: str
    expected: Bitmap
    observed: Bitmap
    hazards: tuple[str, ...] = ()

    def describe(self) -> str:
        rows = "/".join(
            "".join("#" if bit else "." for bit in self.expected.row(r))
            for r in range(self.expected.dims.rows)
        )
        seen = "/".join(
            "".join("#" if bit else "." for bit in self.observed.row(r))
            for r in range(self.observed.dims.rows)
        )
        text = f"frame {self.index} after {self.stage}: expected {rows}, observed {seen}"
        if self.hazards:
            text += f", hazards {', '.join(self.hazards)}"
        return text


@dataclass
class VerifyReport:
    mode: str
    dims: GridDims
    gates: str
    frames: int = 0
    passed: int = 0
    failed: int = 0
    hazard_count: int = 0
    first_counterexample: Counterexample | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.hazard_count == 0

    def merge(self, other: VerifyReport) -> None:
        self.frames += other.frames
        self.passed += other.passed
        self.failed += other.failed
        self.hazard_count += other.hazard_count
        mine, theirs = self.first_counterexample, other.first_counterexample
        if theirs is not None and (mine is None or theirs.index < mine.index):
            self.first_counterexample = theirs

    def record(self, failure: Counterexample | None) -> None:
        self.frames += 1
        if failure is None:
            self.passed += 1
            return
        self.failed += 1
        if self.first_counterexample is None or failure.index < self.first_counterexample.index:
            self.first_counterexample = failure


DisplayFactory = Callable[[], SimulatedDisplay]


def _factory(config: Config, dims: GridDims, gates: GateLogic) -> DisplayFactory:
    sized = config.model_copy(update={"dims": DimsConfig(rows=dims.rows, cols=dims.cols)})
    return display_factory(sized, gates=gates, strict=False, record_trace=False)


def _run_and_check(
    display: SimulatedDisplay, index: int, stage: str, command: ShowCommand | ClearCommand
) -> Counterexample | None:
    expected = command.frame if isinstance(command, ShowCommand) else Bitmap.blank(display.dims)
    seen_hazards = len(display.hazards)
    response = display.execute(command)
    observed = display.snapshot()
    new_hazards = display.hazards.records[seen_hazards:]
    if isinstance(response, AckResponse) and observed == expected and not new_hazards:
        return None
    return Counterexample(
        index=index,
        stage=stage,
        expected=expected,
        observed=observed,
        hazards=tuple(record.describe() for record in new_hazards[:4]),
    )


def check_frame(display: SimulatedDisplay, frame: Bitmap, index: int = 0) -> Counterexample | None:
    """SHOW then CLEAR on ``display``, checking the grid after each."""
    failure = _run_and_check(display, index, "show", ShowCommand(frame))
    if failure is None:
        failure = _run_and_check(display, index, "clear", ClearCommand())
    return failure


def _exhaustive_chunk(
    make: DisplayFactory, dims: GridDims, indices: range, report: VerifyReport
) -> VerifyReport:
    for value in indices:
        display = make()
        report.record(check_frame(display, Bitmap.from_int(dims, value), value))
        report.hazard_count += len(display.hazards)
    return report


def _chain_chunk(
    make: DisplayFactory, frames: Sequence[tuple[int, Bitmap]], report: VerifyReport
) -> VerifyReport:
    display = make()
    for index, frame in frames:
        report.record(_run_and_check(display, index, "show", ShowCommand(frame)))
    if frames:
        last = frames[-1][0]
        failure = _run_and_check(display, last, "clear", ClearCommand())
        if failure is not None:
            report.failed += 1
            if report.first_counterexample is None:
                report.first_counterexample = failure
    report.hazard_count += len(display.hazards)
    return report


def _split(count: int, workers: int) -> list[range]:
    workers = max(1, min(workers, count or 1))
    step = -(-count // workers) if count else 0
    return [range(start, min(start + step, count)) for start in range(0, count, step or 1)]


def _fan_out(jobs: list[Callable[[], VerifyReport]], workers: int) -> list[VerifyReport]:
    if workers <= 1 or len(jobs) <= 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: job(), jobs))


def verify_exhaustive(
    config: Config,
    dims: GridDims,
    *,
    gates: GateLogic = REFERENCE_GATES,
    workers: int = 1,
) -> VerifyReport:
    """Every one of the 2**(rows*cols) frames, each on a freshly booted display.

    Raises:
        ValidationError: grid larger than 4x4.
    """
    if dims.rows > MAX_EXHAUSTIVE_SIDE or dims.cols > MAX_EXHAUSTIVE_SIDE:
        raise ValidationError(
            f"Exhaustive verification is limited to {MAX_EXHAUSTIVE_SIDE}x{MAX_EXHAUSTIVE_SIDE}",
            field="dims",
            value=dims,
        )
    make = _factory(config, dims, gates)
    total = 1 << dims.size
    logger.info(f"Verifying all {total} frames at {dims} with {workers} worker(s)")

    def job(indices: range) -> Callable[[], VerifyReport]:
        return lambda: _exhaustive_chunk(
            make, dims, indices, VerifyReport("exhaustive", dims, gates.name)
        )

    report = VerifyReport("exhaustive", dims, gates.name)
    for part in _fan_out([job(r) for r in _split(total, workers)], workers):
        report.merge(part)
    return report


def random_frames(dims: GridDims, count: int, seed: int) -> list[Bitmap]:
    rng = random.Random(seed)
    return [Bitmap.from_int(dims, rng.getrandbits(dims.size)) for _ in range(count)]


def verify_random(
    config: Config,
    count: int,
    *,
    dims: GridDims | None = None,
    seed: int = 0,
    gates: GateLogic = REFERENCE_GATES,
    workers: int = 1,
) -> VerifyReport:
    """``count`` seeded random frames shown back to back, then a final clear.

    With several workers the frames are split into contiguous runs, each
    chained through its own display.
    """
    dims = dims or config.grid_dims
    if count < 0:
        raise ValidationError("Frame count must be >= 0", field="count", value=count)
    make = _factory(config, dims, gates)
    frames = list(enumerate(random_frames(dims, count, seed)))
    logger.info(f"Verifying {count} random frames at {dims} (seed {seed})")

    def job(indices: range) -> Callable[[], VerifyReport]:
        chunk = frames[indices.start : indices.stop]
        return lambda: _chain_chunk(make, chunk, VerifyReport("random", dims, gates.name))

    report = VerifyReport("random", dims, gates.name)
    for part in _fan_out([job(r) for r in _split(count, workers)], workers):
        report.merge(part)
    return report
