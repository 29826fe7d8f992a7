"""Tests for PBM/PGM loading."""

import pytest

from taxelsim.raster.image import GrayImage
from taxelsim.raster.pnm import load_pbm, load_pbm_file
from taxelsim.taxel.model import Bitmap
from taxelsim.utils.exceptions import (
    MalformedHeaderError,
    RasterError,
    TruncatedDataError,
    UnsupportedMagicError,
)


class TestBitmaps:
    """Test P1 and P4."""

    def test_plain(self):
        """P1 text with 1 for black."""
        frame = load_pbm(b"P1\n2 2\n1 0\n0 1\n")
        assert frame == Bitmap.from_rows([[1, 0], [0, 1]])

    def test_plain_without_separators(self):
        """P1 pixels may be packed without whitespace."""
        assert load_pbm(b"P1 3 1 101") == Bitmap.from_rows([[1, 0, 1]])

    def test_comments(self):
        """Comments in the header are skipped."""
        frame = load_pbm(b"P1\n# made by hand\n2 1 # trailing\n1 1\n")
        assert frame == Bitmap.from_rows([[1, 1]])

    def test_raw_row_padding(self):
        """P4 rows are padded to whole bytes, MSB first."""
        frame = load_pbm(b"P4\n3 2\n" + bytes([0b10100000, 0b01011111]))
        assert frame == Bitmap.from_rows([[1, 0, 1], [0, 1, 0]])

    def test_invalid_plain_pixel(self):
        """Only 0 and 1 are P1 pixels."""
        with pytest.raises(RasterError):
            load_pbm(b"P1\n2 1\n1 2\n")


class TestGraymaps:
    """Test P2 and P5."""

    def test_raw_zeros(self):
        """P5 of zeros is an all-black image."""
        img = load_pbm(b"P5\n2 2\n255\n" + bytes(4))
        assert img == GrayImage.uniform(2, 2, 0)

    def test_plain_rescales(self):
        """P2 with maxval 15 rescales to 0..255, rounding half up."""
        img = load_pbm(b"P2\n4 1\n15\n0 15 8 7\n")
        assert img == GrayImage.from_rows([[0, 255, 136, 119]])

    def test_sixteen_bit(self):
        """P5 with maxval > 255 reads big-endian u16 samples."""
        img = load_pbm(b"P5\n3 1\n65535\n" + bytes([0xFF, 0xFF, 0x00, 0x00, 0x80, 0x00]))
        assert img == GrayImage.from_rows([[255, 0, 128]])

    def test_sample_above_maxval(self):
        """Samples must not exceed maxval."""
        with pytest.raises(RasterError):
            load_pbm(b"P2\n1 1\n15\n16\n")


class TestRejection:
    """Test error cases."""

    def test_unsupported_magic(self):
        """P7 and friends are refused."""
        with pytest.raises(UnsupportedMagicError):
            load_pbm(b"P7\nWIDTH 2\n")

    @pytest.mark.parametrize(
        "data",
        [b"P1\n2 2\n1 0\n0", b"P4\n16 2\n\x00\x00\x00", b"P5\n2 2\n255\n\x00\x00"],
    )
    def test_truncated(self, data):
        """Fewer pixels than announced is truncation."""
        with pytest.raises(TruncatedDataError):
            load_pbm(data)

    @pytest.mark.parametrize(
        "data",
        [b"P1\nx 2\n", b"P1\n0 2\n", b"P2\n2 2\n0\n", b"P5\n1 1\n255", b"P1\n"],
    )
    def test_malformed_header(self, data):
        """Missing or out-of-range header fields are malformed."""
        with pytest.raises(MalformedHeaderError):
            load_pbm(data)

    def test_file(self, write_file):
        """load_pbm_file reads from disk."""
        path = write_file("dot.pbm", b"P1\n1 1\n1\n")
        assert load_pbm_file(path) == Bitmap.from_rows([[1]])
