from collections.abc import Sequence

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text
from rich.theme import Theme

from taxelsim.circuit.budget import ResourceBudget
from taxelsim.circuit.hazards import HazardReport
from taxelsim.circuit.physics import PowerParams, pulse_current, pulse_energy, pulse_voltage
from taxelsim.observability.stats import RunStats
from taxelsim.taxel.model import Bitmap
from taxelsim.verify import VerifyReport

TAXEL_THEME = Theme(
    {
        "info": "cyan",
        "warning": "yellow",
        "error": "bright_red bold",
        "success": "green",
        "dim": "dim",
        "muted": "grey50",
        "border": "grey35",
        "highlight": "bold cyan",
        "taxel.up": "bold white",
        "taxel.down": "grey35",
    }
)

RAISED = "●"
LOWERED = "·"

_console: Console | None = None


def get_console() -> Console:
    global _console
    if _console is None:
        _console = Console(theme=TAXEL_THEME, highlight=False)

    return _console


class TUI:
    def __init__(self, console: Console | None = None) -> None:
        self.console = console or get_console()

    def render_bitmap(self, frame: Bitmap, title: str = "Display") -> None:
        text = Text()
        for row in range(frame.dims.rows):
            for bit in frame.row(row):
                if bit:
                    text.append(RAISED + " ", style="taxel.up")
                else:
                    text.append(LOWERED + " ", style="taxel.down")
            if row < frame.dims.rows - 1:
                text.append("\n")
        self.console.print(
            Panel(
                text,
                title=Text(f"{title} {frame.dims}", style="highlight"),
                border_style="border",
                box=box.ROUNDED,
                expand=False,
            )
        )

    def render_stats(self, stats: RunStats, hazards: HazardReport | None = None) -> None:
        table = Table(title="Run statistics", box=box.SIMPLE)
        table.add_column("Statistic", style="cyan")
        table.add_column("Value", style="magenta", justify="right")

        table.add_row("Set pulses", str(stats.set_pulses))
        table.add_row("Reset pulses", str(stats.reset_pulses))
        table.add_row("Energy", f"{stats.total_joules:.6f} J")
        table.add_row("Max temperature", f"{stats.max_temperature_c:.3f} °C")
        table.add_row("Hazards", str(stats.hazard_count))
        table.add_row("Waveform steps", str(stats.steps))
        table.add_row("Simulated time", f"{stats.simulated_time_s:.3f} s")
        table.add_row("Grid", str(stats.budget.dims))
        self.console.print(table)

        if hazards:
            for kind, count in sorted(hazards.by_kind().items()):
                self.console.print(f"[warning]⚠ {kind}: {count}[/warning]")

    def render_budget(self, budget: ResourceBudget) -> None:
        table = Table(title=f"Resource budget {budget.dims}", box=box.SIMPLE)
        table.add_column("Item", style="cyan")
        table.add_column("Count", style="magenta", justify="right")

        table.add_row("Column transistors", str(budget.column_transistors))
        table.add_row("Row transistors", str(budget.row_transistors))
        table.add_row("Controller pins", str(budget.controller_pins))
        table.add_row("Naive half-bridge", str(budget.naive_half_bridge))
        table.add_row("Naive full-bridge", str(budget.naive_full_bridge))
        self.console.print(table)
        self.console.print(budget.summary(), soft_wrap=True)

    def render_power(self, power: PowerParams, duties: Sequence[float]) -> None:
        table = Table(
            title=f"Pulse drive at U_DC={power.u_dc_v:g} V, R={power.coil_resistance_ohm:g} Ω, "
            f"t={power.pulse_width_s * 1000:g} ms",
            box=box.SIMPLE,
        )
        table.add_column("Duty", style="cyan", justify="right")
        table.add_column("U_P (V)", justify="right")
        table.add_column("Current (A)", justify="right")
        table.add_column("Energy/pulse (J)", style="magenta", justify="right")

        for duty in duties:
            params = PowerParams(
                u_dc_v=power.u_dc_v,
                duty=duty,
                pulse_width_s=power.pulse_width_s,
                coil_resistance_ohm=power.coil_resistance_ohm,
            )
            table.add_row(
                f"{duty:.2f}",
                f"{pulse_voltage(params):.3f}",
                f"{pulse_current(params):.4f}",
                f"{pulse_energy(params):.6f}",
            )
        self.console.print(table)

    def render_verify(self, report: VerifyReport) -> None:
        style = "success" if report.ok else "error"
        self.console.print(
            f"[{style}]{report.mode} {report.dims} ({report.gates} gates): "
            f"{report.frames} frames, {report.passed} passed, {report.failed} failed, "
            f"{report.hazard_count} hazards[/{style}]",
            soft_wrap=True,
        )
        if report.first_counterexample is not None:
            self.console.print(
                f"[error]First counterexample: {report.first_counterexample.describe()}[/error]",
                soft_wrap=True,
                markup=True,
            )

    def print_success(self, message: str) -> None:
        self.console.print(f"[success]✓[/success] {message}", soft_wrap=True)

    def print_warning(self, message: str) -> None:
        self.console.print(f"[warning]⚠ {message}[/warning]", soft_wrap=True)

    def print_error(self, message: str) -> None:
        self.console.print(Text(f"✗ {message}", style="error"), soft_wrap=True)
