"""Tests for trace records, the trace writer and run statistics."""

import orjson
import pytest

from taxelsim.circuit.budget import resource_budget
from taxelsim.circuit.hazards import HazardKind, HazardRecord, HazardReport
from taxelsim.circuit.physics import EnergyLedger
from taxelsim.observability.stats import RunStats
from taxelsim.observability.trace import TSV_FIELDS, TraceFormat, TraceRecord, TraceWriter
from taxelsim.protocol.messages import ClearCommand, ShowCommand
from taxelsim.taxel.model import Bitmap


def _record(**overrides) -> TraceRecord:
    values = dict(
        step=3,
        phase="RowSet",
        row_addr=5,
        row_enable=True,
        mode=False,
        col_bits=1 << 9,
        set_coords=((5, 9),),
        reset_coords=(),
        joules=0.24,
        hazards=(),
    )
    values.update(overrides)
    return TraceRecord(**values)


class TestTraceRecord:
    """Test record formatting."""

    def test_tsv_line(self):
        """Fields appear in order with hex column bits and dashes for empties."""
        assert _record().to_tsv() == "3\tRowSet\t5\t1\t0\t0200\t5,9\t-\t0.240000\t-"

    def test_tsv_hazards(self):
        """Hazards are comma separated."""
        line = _record(hazards=("A@0,1", "B@-")).to_tsv()
        assert line.endswith("\tA@0,1,B@-")

    def test_to_dict(self):
        """The dict form uses lists and hex column bits."""
        data = _record().to_dict()
        assert data["col_bits"] == "0200"
        assert data["set_coords"] == [[5, 9]]
        assert data["hazards"] == []


class TestTraceWriter:
    """Test writing trace files."""

    def test_tsv_file(self, tmp_path):
        """TSV has a header line then one line per record."""
        path = TraceWriter(tmp_path / "run.tsv").write([_record(), _record(step=4)])
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0].split("\t") == list(TSV_FIELDS)
        assert len(lines) == 3

    def test_jsonl_file(self, tmp_path):
        """JSONL has one parseable object per record."""
        path = TraceWriter(tmp_path / "nested" / "run.jsonl", TraceFormat.JSONL).write([_record()])
        lines = path.read_bytes().splitlines()
        assert len(lines) == 1
        assert orjson.loads(lines[0])["phase"] == "RowSet"

    def test_deterministic(self, display, dims16, tmp_path, random_frame):
        """Rendering the same run twice gives identical bytes."""
        display.execute(ShowCommand(random_frame(dims16)))
        writer = TraceWriter(tmp_path / "a.tsv")
        assert writer.render(display.trace) == writer.render(list(display.trace))

    def test_trace_matches_ledger(self, display, dims16):
        """Set and reset coordinates in the trace add up to the ledger counts."""
        display.execute(ShowCommand(Bitmap.from_coords(dims16, [(0, 0), (15, 15)])))
        display.execute(ClearCommand())
        sets = sum(len(r.set_coords) for r in display.trace)
        resets = sum(len(r.reset_coords) for r in display.trace)
        assert (sets, resets) == (display.ledger.set_pulses, display.ledger.reset_pulses)
        assert sum(r.joules for r in display.trace) == pytest.approx(display.ledger.total_joules)


class TestRunStats:
    """Test RunStats."""

    def test_collect(self, dims16):
        """Stats echo the ledger and count hazards."""
        ledger = EnergyLedger()
        ledger.charge(3, 2, 0.24)
        hazards = HazardReport()
        hazards.extend([HazardRecord(0, HazardKind.DOUBLE_COIL_DRIVE)])
        stats = RunStats.collect(
            resource_budget(dims16),
            ledger,
            hazards,
            steps=10,
            simulated_time_s=0.1,
            max_temperature_c=21.5,
        )
        data = stats.get_stats()
        assert data["set_pulses"] == 3
        assert data["reset_pulses"] == 2
        assert data["total_joules"] == pytest.approx(1.2)
        assert data["hazard_count"] == 1
        assert data["controller_pins"] == 21
        assert data["dims"] == "16x16"

    def test_summary(self, dims16):
        """The summary is a single line."""
        stats = RunStats(resource_budget(dims16), set_pulses=1, total_joules=0.24)
        assert stats.get_summary() == "Set: 1 | Reset: 0 | Energy: 0.2400 J | Hazards: 0"
