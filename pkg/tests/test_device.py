"""Tests for the simulated display end to end through its controller."""

import pytest

from taxelsim.circuit.gates import MUTANT_AND_SET_GATE, REFERENCE_GATES
from taxelsim.circuit.physics import pulse_energy
from taxelsim.firmware.controller import ControllerPhase, ControllerState
from taxelsim.firmware.device import SimulatedDisplay
from taxelsim.firmware.planner import Phase, Timing, WaveformStep
from taxelsim.circuit.gates import PinState
from taxelsim.protocol.codec import decode, encode
from taxelsim.protocol.messages import (
    AckResponse,
    BusyResponse,
    ClearCommand,
    NakResponse,
    PingCommand,
    PongResponse,
    ShowCommand,
    StatusCommand,
    StatusResponse,
)
from taxelsim.protocol.transport import LoopbackTransport
from taxelsim.taxel.model import Bitmap, GridDims
from taxelsim.utils.exceptions import BadChecksumError, BadDimsError, HazardError


class TestShow:
    """Test SHOW through the display."""

    def test_show_from_boot(self, display, dims16, random_frame):
        """After SHOW the grid equals the frame and the display is Displayed."""
        frame = random_frame(dims16)
        assert display.execute(ShowCommand(frame)) == AckResponse()
        assert display.snapshot() == frame
        assert display.state.phase is ControllerPhase.DISPLAYED
        assert display.hazards.count() == 0

    def test_skip_reset_counts_only_sets(self, dims16, random_frame):
        """From boot with skip, energy is popcount times one pulse."""
        display = SimulatedDisplay(dims16, skip_reset_if_clear=True)
        frame = random_frame(dims16)
        display.execute(ShowCommand(frame))
        assert display.ledger.set_pulses == frame.popcount()
        assert display.ledger.reset_pulses == 0
        assert display.ledger.total_joules == pytest.approx(
            frame.popcount() * pulse_energy(display.power), rel=1e-9
        )

    def test_without_skip_every_taxel_reset(self, display, dims16):
        """Without skip every row is reset once."""
        display.execute(ShowCommand(Bitmap.from_coords(dims16, [(5, 9)])))
        assert display.ledger.reset_pulses == 256
        assert display.ledger.set_pulses == 1

    def test_sequential_shows(self, display, random_frame, dims16):
        """Showing f1 then f2 leaves exactly f2."""
        first, second = random_frame(dims16), random_frame(dims16)
        display.execute(ShowCommand(first))
        display.execute(ShowCommand(second))
        assert display.snapshot() == second
        assert display.state.phase is ControllerPhase.DISPLAYED
        assert display.hazards.count() == 0

    def test_sequence_of_commands_random(self, dims4, rng):
        """Any SHOW/CLEAR sequence ends with the grid matching the shadow."""
        display = SimulatedDisplay(dims4, skip_reset_if_clear=True)
        for _ in range(40):
            if rng.random() < 0.7:
                display.execute(ShowCommand(Bitmap.from_int(dims4, rng.getrandbits(16))))
            else:
                display.execute(ClearCommand())
            assert display.snapshot() == display.controller.shadow
        assert display.hazards.count() == 0

    def test_wrong_dims_nak(self, display):
        """A frame of the wrong size is refused with BadDims."""
        response = display.execute(ShowCommand(Bitmap.blank(GridDims(4, 4))))
        assert response == NakResponse(BadDimsError.reason_code)

    def test_trace_covers_every_step(self, display, dims16):
        """The trace has one record per executed step."""
        display.execute(ClearCommand())
        assert len(display.trace) == display.steps == 48
        assert display.elapsed_s == pytest.approx(16 * (0.01 + 0.005 + 0.005))


class TestClear:
    """Test CLEAR."""

    def test_clear_lowers_all(self, display, dims16):
        """After CLEAR nothing is raised and the display is Ready."""
        display.execute(ShowCommand(Bitmap.from_int(dims16, (1 << 256) - 1)))
        display.execute(ClearCommand())
        assert display.snapshot().is_clear()
        assert display.state.phase is ControllerPhase.READY
        assert display.controller.shadow.is_clear()


class TestHolding:
    """Test that a latched image costs nothing to hold."""

    def test_idle_steps_draw_no_energy(self, display, dims16, random_frame):
        """Ten thousand idle steps add no energy and move nothing."""
        frame = random_frame(dims16)
        display.execute(ShowCommand(frame))
        joules = display.ledger.total_joules
        idle = [WaveformStep(PinState.idle(), 0.001, Phase.IDLE)] * 10_000
        display.run(idle)
        assert display.ledger.total_joules == joules
        assert display.snapshot() == frame

    def test_holding_cools_to_ambient(self, display, dims16):
        """A held image relaxes back toward ambient temperature."""
        display.execute(ShowCommand(Bitmap.from_coords(dims16, [(0, 0)])))
        hot = display.grid.max_temperature_c
        display.run([WaveformStep(PinState.idle(), 1.0, Phase.IDLE)] * 50)
        assert display.ambient_c <= display.grid.max_temperature_c < hot


class TestObservers:
    """Test STATUS, PING and BUSY handling."""

    def test_status_reports_counters_and_shadow(self, dims4):
        """STATUS carries the state code, counters and shadow."""
        display = SimulatedDisplay(dims4, skip_reset_if_clear=True)
        frame = Bitmap.from_coords(dims4, [(0, 0), (1, 1)])
        display.execute(ShowCommand(frame))
        status = display.execute(StatusCommand())
        assert status == StatusResponse(
            state_code=int(ControllerPhase.DISPLAYED), set_pulses=2, reset_pulses=0, shadow=frame
        )

    def test_status_saturates(self, dims4):
        """Counters beyond a u16 read as 0xFFFF."""
        display = SimulatedDisplay(dims4)
        display.ledger.set_pulses = 70_000
        assert display.status().set_pulses == 0xFFFF

    def test_ping(self, display):
        """PING answers PONG and changes nothing."""
        assert display.execute(PingCommand()) == PongResponse()
        assert display.state.phase is ControllerPhase.READY
        assert display.steps == 0

    def test_busy_mid_scan(self, display, dims16):
        """SHOW while scanning is refused and the grid is untouched."""
        display.controller.state = ControllerState(ControllerPhase.SCANNING_SET, row_cursor=3)
        assert display.execute(ShowCommand(Bitmap.blank(dims16))) == BusyResponse()
        assert display.execute(StatusCommand()).state_code == int(ControllerPhase.SCANNING_SET)
        assert display.steps == 0


class TestPress:
    """Test mechanical presses on the display."""

    def test_press_knocks_down(self, display, dims16):
        """A firm press lowers a raised taxel; the shadow does not notice."""
        frame = Bitmap.from_coords(dims16, [(2, 2)])
        display.execute(ShowCommand(frame))
        assert not display.press(2, 2, 499.0)
        assert display.press(2, 2, 500.0)
        assert display.snapshot().is_clear()
        assert display.controller.shadow == frame


class TestStrict:
    """Test strict hazard mode."""

    def test_mutant_aborts(self, dims4):
        """With the AND mutant, strict mode raises on the first reset and returns to Ready."""
        display = SimulatedDisplay(dims4, strict=True, gates=MUTANT_AND_SET_GATE)
        with pytest.raises(HazardError):
            display.execute(ShowCommand(Bitmap.blank(dims4)))
        assert display.state.phase is ControllerPhase.READY
        assert display.hazards.count() >= 1

    def test_abort_then_skip_reset_recovers(self, dims4):
        """A grid left dirty by an aborted scan is fully reset by the next SHOW."""
        display = SimulatedDisplay(
            dims4, strict=True, gates=MUTANT_AND_SET_GATE, skip_reset_if_clear=True
        )
        with pytest.raises(HazardError):
            display.execute(ClearCommand())
        display.grid.raised[1, :] = True
        display.gates = REFERENCE_GATES
        target = Bitmap.from_coords(dims4, [(3, 2)])
        assert isinstance(display.execute(ShowCommand(target)), AckResponse)
        assert display.snapshot() == target

    def test_mutant_non_strict_records(self, dims4):
        """Without strict the run completes and hazards are recorded."""
        display = SimulatedDisplay(dims4, gates=MUTANT_AND_SET_GATE)
        display.execute(ShowCommand(Bitmap.blank(dims4)))
        assert display.hazards.count() > 0


class TestPoll:
    """Test the display side of the byte link."""

    def _attached(self, dims):
        link = LoopbackTransport()
        display = SimulatedDisplay(dims)
        display.attach(link.device)
        return link, display

    def test_ping_over_wire(self, dims16):
        """A PING frame is answered with a PONG frame."""
        link, display = self._attached(dims16)
        link.host.write(bytes([0xA5, 0x04, 0x00, 0x04]))
        display.poll()
        assert decode(link.host.read()) == PongResponse()

    def test_bad_checksum_naks(self, dims16):
        """A corrupted frame is answered with a Nak and never executed."""
        link, display = self._attached(dims16)
        link.host.write(bytes([0xA5, 0x04, 0x00, 0x05]))
        display.poll()
        assert decode(link.host.read()) == NakResponse(BadChecksumError.reason_code)
        assert display.steps == 0

    def test_show_over_wire(self, dims4):
        """SHOW bytes drive the grid and are acknowledged."""
        link, display = self._attached(dims4)
        frame = Bitmap.from_coords(dims4, [(1, 2)])
        link.host.write(encode(ShowCommand(frame)))
        display.poll()
        assert decode(link.host.read(), dims4) == AckResponse()
        assert display.snapshot() == frame

    def test_unattached_poll_is_noop(self, display):
        """Polling with no transport does nothing."""
        display.poll()
        assert display.steps == 0
