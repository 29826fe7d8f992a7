import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

# Load environment variables from .env file
load_dotenv()

from taxelsim import __version__
from taxelsim.circuit.budget import resource_budget
from taxelsim.circuit.gates import MUTANT_AND_SET_GATE, REFERENCE_GATES, GateLogic
from taxelsim.config.config import Config
from taxelsim.config.loader import load_config
from taxelsim.observability.trace import TraceFormat
from taxelsim.raster.braille import render_braille
from taxelsim.raster.image import (
    GrayImage,
    bitmap_to_gray,
    box_scale,
    frame_from_text,
    invert,
    ordered_dither,
    threshold,
)
from taxelsim.raster.pnm import load_pbm_file
from taxelsim.session import DisplaySession
from taxelsim.taxel.model import Bitmap, GridDims, bitmap_diff
from taxelsim.ui.tui import TUI, get_console
from taxelsim.utils.exceptions import (
    BusyError,
    ConfigError,
    DimensionMismatchError,
    HazardError,
    ProtocolError,
    RasterError,
    ValidationError,
)
from taxelsim.verify import VerifyReport, verify_exhaustive, verify_random

logger = logging.getLogger(__name__)

console = get_console()

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_HAZARD = 3

DEFAULT_THRESHOLD = 128
DEFAULT_DUTY_SWEEP = (1.0, 0.75, 0.5, 0.25, 0.1)

_INPUT_ERRORS = (
    ConfigError,
    ValidationError,
    RasterError,
    ProtocolError,
    BusyError,
    OSError,
)


def setup_logging(level: str) -> None:
    """Route all log output to stderr so stdout stays deterministic."""
    handler = RichHandler(
        console=Console(stderr=True),
        show_time=False,
        show_path=False,
        rich_tracebacks=True,
    )
    logging.basicConfig(level=level.upper(), format="%(message)s", handlers=[handler], force=True)


def _plural(count: int, noun: str) -> str:
    return noun if count == 1 else f"{noun}s"

def frame_from_image(
    image: Bitmap | GrayImage,
    dims: GridDims,
    *,
    threshold_level: int | None = None,
    dither: bool = False,
) -> Bitmap:
    """Reduce a loaded image to a frame of ``dims``.

    A bitmap already at grid size is used as is; anything else is scaled
    through grayscale and thresholded (default 128) or dithered.
    """
    if isinstance(image, Bitmap):
        if image.dims == dims and not dither and threshold_level is None:
            return image
        image = bitmap_to_gray(image)
    scaled = box_scale(image, dims)
    if dither:
        return ordered_dither(scaled)
    return threshold(scaled, DEFAULT_THRESHOLD if threshold_level is None else threshold_level)


class CLI:
    def __init__(self, config: Config, gates: GateLogic = REFERENCE_GATES) -> None:
        self.config = config
        self.gates = gates
        self.tui = TUI(console)

    def run_guarded(self, action: Callable[[], int]) -> int:
        """Run a subcommand body, mapping domain errors to exit codes."""
        try:
            return action()
        except HazardError as e:
            self.tui.print_error(f"Hazard: {e}")
            return EXIT_HAZARD
        except _INPUT_ERRORS as e:
            self.tui.print_error(str(e))
            return EXIT_INPUT_ERROR

    def show_frame(self, frame: Bitmap, trace_path: Path | None = None) -> int:
        if frame.dims != self.config.grid_dims:
            raise DimensionMismatchError(self.config.grid_dims, frame.dims)
        session = DisplaySession(self.config, self.gates)
        try:
            session.show(frame)
        finally:
            if trace_path is not None:
                session.write_trace(trace_path)
        return self._report(session, frame)

    def clear(self, trace_path: Path | None = None) -> int:
        session = DisplaySession(self.config, self.gates)
        try:
            session.clear()
        finally:
            if trace_path is not None:
                session.write_trace(trace_path)
        return self._report(session, Bitmap.blank(self.config.grid_dims))

    def _report(self, session: DisplaySession, expected: Bitmap) -> int:
        observed = session.snapshot()
        stats = session.stats()
        self.tui.render_bitmap(observed)
        self.tui.render_stats(stats, session.hazards)

        mismatches = bitmap_diff(expected, observed)
        if mismatches:
            where = ", ".join(f"({r},{c})" for r, c in mismatches[:8])
            self.tui.print_error(f"Display differs from the intended frame at {where}")
            return EXIT_VERIFY_FAILED
        if self.config.strict_hazards and stats.hazard_count:
            count = stats.hazard_count
            self.tui.print_error(f"{count} {_plural(count, 'hazard')} in strict mode")
            return EXIT_HAZARD
        raised = expected.popcount()
        self.tui.print_success(
            f"Verified {raised} raised {_plural(raised, 'taxel')} on {expected.dims}"
        )
        return EXIT_OK

    def report_verify(self, report: VerifyReport) -> int:
        self.tui.render_verify(report)
        return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def _cli(ctx: click.Context) -> CLI:
    return ctx.find_object(CLI)


@click.group()
@click.version_option(__version__, "--version", "-v", prog_name="taxelsim")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Config file (key=value or .toml). Defaults to $TAXELSIM_CONFIG.",
)
@click.option("--strict/--no-strict", default=None, help="Abort on the first hazard")
@click.option(
    "--skip-reset/--no-skip-reset",
    default=None,
    help="Skip resetting rows the firmware believes are already clear",
)
@click.option(
    "--trace-format",
    type=click.Choice([f.value for f in TraceFormat]),
    default=None,
    help="Trace file format",
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Log level (logs go to stderr)",
)
@click.option("--mutate-set-gate", is_flag=True, hidden=True)
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Path | None,
    strict: bool | None,
    skip_reset: bool | None,
    trace_format: str | None,
    log_level: str,
    mutate_set_gate: bool,
) -> None:
    """taxelsim - simulated bi-stable solenoid tactile display.

    Examples:
        taxelsim show picture.pgm --dither
        taxelsim text "hello 42"
        taxelsim verify --rows 4 --cols 4
        taxelsim budget
    """
    setup_logging(log_level)

    overrides: dict[str, Any] = {}
    if strict is not None:
        overrides["strict_hazards"] = strict
    if skip_reset is not None:
        overrides["skip_reset_if_clear"] = skip_reset
    if trace_format is not None:
        overrides["trace_format"] = trace_format

    try:
        config = load_config(config_path, overrides)
    except ConfigError as e:
        TUI(console).print_error(f"Configuration Error: {e}")
        ctx.exit(EXIT_INPUT_ERROR)

    gates = MUTANT_AND_SET_GATE if mutate_set_gate else REFERENCE_GATES
    if mutate_set_gate:
        logger.warning("Set gate replaced by AND (mutation check)")
    ctx.obj = CLI(config, gates)


@cli.command()
@click.argument("source")
@click.option("--threshold", "threshold_level", type=click.IntRange(0, 255), default=None)
@click.option("--dither", is_flag=True, help="4x4 ordered dither instead of a threshold")
@click.option("--invert", "invert_frame", is_flag=True, help="Raise light pixels instead")
@click.option(
    "--trace",
    "trace_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write a per-step trace file",
)
@click.option("--literal", is_flag=True, help="SOURCE is a frame literal such as 01/10")
@click.pass_context
def show(
    ctx: click.Context,
    source: str,
    threshold_level: int | None,
    dither: bool,
    invert_frame: bool,
    trace_path: Path | None,
    literal: bool,
) -> None:
    """Show an image (PBM/PGM) or a literal frame on the display."""
    if dither and threshold_level is not None:
        raise click.UsageError("--threshold and --dither are mutually exclusive")
    app = _cli(ctx)

    def action() -> int:
        dims = app.config.grid_dims
        if literal:
            frame = frame_from_text(source)
        else:
            image = load_pbm_file(source)
            frame = frame_from_image(image, dims, threshold_level=threshold_level, dither=dither)
        if invert_frame:
            frame = invert(frame)
        return app.show_frame(frame, trace_path)

    ctx.exit(app.run_guarded(action))


@cli.command()
@click.argument("string")
@click.option(
    "--trace",
    "trace_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write a per-step trace file",
)
@click.pass_context
def text(ctx: click.Context, string: str, trace_path: Path | None) -> None:
    """Render text as grade-1 Braille and show it."""
    app = _cli(ctx)

    def action() -> int:
        rendered = render_braille(string, app.config.grid_dims)
        if rendered.truncated:
            lost = rendered.truncated
            app.tui.print_warning(f"{lost} {_plural(lost, 'character')} did not fit")
        return app.show_frame(rendered.bitmap, trace_path)

    ctx.exit(app.run_guarded(action))


@cli.command()
@click.option(
    "--trace",
    "trace_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write a per-step trace file",
)
@click.pass_context
def clear(ctx: click.Context, trace_path: Path | None) -> None:
    """Reset every taxel, row by row."""
    app = _cli(ctx)
    ctx.exit(app.run_guarded(lambda: app.clear(trace_path)))


@cli.command()
@click.option("--rows", type=click.IntRange(1, 4), default=None, help="Exhaustive grid rows")
@click.option("--cols", type=click.IntRange(1, 4), default=None, help="Exhaustive grid columns")
@click.option("--random", "random_count", type=click.IntRange(0), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=click.IntRange(1), default=1, show_default=True)
@click.pass_context
def verify(
    ctx: click.Context,
    rows: int | None,
    cols: int | None,
    random_count: int | None,
    seed: int,
    workers: int,
) -> None:
    """Run the display oracle: exhaustive on a small grid or N random frames."""
    if random_count is not None and (rows is not None or cols is not None):
        raise click.UsageError("--random cannot be combined with --rows/--cols")
    app = _cli(ctx)

    def action() -> int:
        if random_count is not None:
            report = verify_random(
                app.config, random_count, seed=seed, gates=app.gates, workers=workers
            )
        else:
            dims = GridDims(rows or 4, cols or 4)
            report = verify_exhaustive(app.config, dims, gates=app.gates, workers=workers)
        return app.report_verify(report)

    ctx.exit(app.run_guarded(action))


@cli.command()
@click.pass_context
def budget(ctx: click.Context) -> None:
    """Transistor and pin counts against per-taxel bridge drivers."""
    app = _cli(ctx)
    app.tui.render_budget(resource_budget(app.config.grid_dims))


@cli.command()
@click.option(
    "--duty",
    "duties",
    type=click.FloatRange(0, 1, min_open=True),
    multiple=True,
    help="Duty cycle to tabulate (repeatable)",
)
@click.pass_context
def power(ctx: click.Context, duties: tuple[float, ...]) -> None:
    """Pulse voltage, current and energy over a duty-cycle sweep."""
    app = _cli(ctx)
    app.tui.render_power(app.config.power_params(), duties or DEFAULT_DUTY_SWEEP)


def main() -> None:
    cli(prog_name="taxelsim")


if __name__ == "__main__":
    main()
