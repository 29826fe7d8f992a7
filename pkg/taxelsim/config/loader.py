import logging
import os
from pathlib import Path
from typing import Any

import tomli
from platformdirs import user_config_dir
from pydantic import ValidationError as PydanticValidationError

from taxelsim.config.config import Config
from taxelsim.utils.exceptions import ConfigError

logger = logging.getLogger(__name__)

APP_NAME = "taxelsim"
CONFIG_FILE_NAME = "taxelsim.conf"
CONFIG_ENV_VAR = "TAXELSIM_CONFIG"


def get_config_dir() -> Path:
    return Path(user_config_dir(APP_NAME))


def get_system_config_path() -> Path:
    return get_config_dir() / CONFIG_FILE_NAME


def _parse_toml(path: Path) -> dict[str, Any]:
    try:
        with open(path, "rb") as f:
            return tomli.load(f)
    except tomli.TOMLDecodeError as e:
        raise ConfigError(f"Invalid TOML in {path}: {e}", config_file=str(path)) from e
    except OSError as e:
        raise ConfigError(f"Failed to read config file {path}: {e}", config_file=str(path)) from e


def _set_dotted(target: dict[str, Any], key: str, value: str) -> None:
    *sections, leaf = key.split(".")
    node = target
    for section in sections:
        child = node.setdefault(section, {})
        if not isinstance(child, dict):
            raise ConfigError(f"'{section}' is both a value and a section", config_key=key)
        node = child
    node[leaf] = value


def parse_key_values(text: str, source: str = "<string>") -> dict[str, Any]:
    """Flat ``section.key=value`` lines into a nested dict of strings.

    Blank lines and ``#`` comments are skipped; pydantic coerces the values.
    """
    result: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key or any(not part for part in key.split(".")):
            raise ConfigError(
                f"Malformed line {lineno}: {raw!r}", config_file=source, details={"line": lineno}
            )
        _set_dotted(result, key, value.strip())
    return result


def _parse_key_value_file(path: Path) -> dict[str, Any]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Failed to read config file {path}: {e}", config_file=str(path)) from e
    return parse_key_values(text, str(path))


def _merge_dicts(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    result = base.copy()
    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _merge_dicts(result[key], value)
        else:
            result[key] = value

    return result


def resolve_config_path(path: Path | None = None) -> Path | None:
    """Explicit path, else ``$TAXELSIM_CONFIG``, else the user config file if present."""
    if path is not None:
        return path
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path:
        return Path(env_path).expanduser()
    system_path = get_system_config_path()
    if system_path.is_file():
        return system_path
    return None


def read_config_file(path: Path) -> dict[str, Any]:
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}", config_file=str(path))
    if path.suffix == ".toml":
        return _parse_toml(path)
    return _parse_key_value_file(path)


def load_config(
    path: Path | None = None, overrides: dict[str, Any] | None = None
) -> Config:
    """Build the configuration; ``overrides`` (e.g. CLI flags) win over the file.

    Raises:
        ConfigError: unreadable file, malformed line, unknown key or invalid value.
    """
    config_path = resolve_config_path(path)
    config_dict: dict[str, Any] = {}
    if config_path is not None:
        logger.info(f"Loading config from {config_path}")
        config_dict = read_config_file(config_path)

    if overrides:
        config_dict = _merge_dicts(config_dict, overrides)

    try:
        config = Config(**config_dict)
    except PydanticValidationError as e:
        raise ConfigError(
            f"Invalid configuration: {e}",
            config_file=str(config_path) if config_path else None,
        ) from e

    return config
