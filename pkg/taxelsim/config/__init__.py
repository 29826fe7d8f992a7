# taxelsim config module
from taxelsim.config.config import (
    Config,
    DimsConfig,
    PowerConfig,
    SolenoidConfig,
    ThermalConfig,
    TimingConfig,
)
from taxelsim.config.loader import CONFIG_ENV_VAR, load_config, parse_key_values

__all__ = [
    "Config",
    "DimsConfig",
    "PowerConfig",
    "SolenoidConfig",
    "ThermalConfig",
    "TimingConfig",
    "CONFIG_ENV_VAR",
    "load_config",
    "parse_key_values",
]
