"""taxelsim UI module."""

from taxelsim.ui.tui import TUI, get_console

__all__ = ["TUI", "get_console"]
