"""Shared fixtures for the taxelsim test suite."""

import random
from pathlib import Path

import pytest

from taxelsim.config.config import Config, DimsConfig
from taxelsim.firmware.device import SimulatedDisplay
from taxelsim.taxel.model import Bitmap, GridDims


@pytest.fixture
def dims16() -> GridDims:
    return GridDims(16, 16)


@pytest.fixture
def dims4() -> GridDims:
    return GridDims(4, 4)


@pytest.fixture
def config() -> Config:
    return Config()


@pytest.fixture
def small_config() -> Config:
    return Config(dims=DimsConfig(rows=4, cols=4))


@pytest.fixture
def display(dims16) -> SimulatedDisplay:
    return SimulatedDisplay(dims16)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


@pytest.fixture
def random_frame(rng):
    def make(dims: GridDims) -> Bitmap:
        return Bitmap.from_int(dims, rng.getrandbits(dims.size))

    return make


@pytest.fixture
def write_file(tmp_path: Path):
    def write(name: str, data: bytes | str) -> Path:
        path = tmp_path / name
        if isinstance(data, str):
            path.write_text(data, encoding="ascii")
        else:
            path.write_bytes(data)
        return path

    return write


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, mocker, tmp_path):
    """Keep the user's real config file and environment out of every test."""
    monkeypatch.delenv("TAXELSIM_CONFIG", raising=False)
    mocker.patch(
        "taxelsim.config.loader.get_system_config_path",
        return_value=tmp_path / "no-such-dir" / "taxelsim.conf",
    )
