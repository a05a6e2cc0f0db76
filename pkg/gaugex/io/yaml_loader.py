"""
YAML loading utilities for gaugex run configuration.

Defaults ship in ``gaugex/config/defaults.yml``; user files are merged over
them key by key. A user file may name another file under ``extends``, which
is loaded first (paths relative to the referring file).
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from gaugex.core.errors import ConfigKeyError

logger = logging.getLogger(__name__)

DEFAULTS_FILE = Path(__file__).resolve().parent.parent / "config" / "defaults.yml"

PathLike = Union[str, Path]


def load_config(config_file: PathLike) -> Dict[str, Any]:
    """
    Load configuration from a YAML file.

    Parameters
    ----------
    config_file : str or Path
        Path to the YAML configuration file

    Returns
    -------
    dict
        Dictionary with configuration data; an empty file gives ``{}``

    Raises
    ------
    FileNotFoundError
        If the configuration file does not exist
    ValueError
        If the file is not valid YAML or its top level is not a mapping
    """
    path = Path(config_file).expanduser()
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")

    try:
        with open(path, "r") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ValueError(f"Error loading configuration file {path}: {e}") from e

    if config is None:
        config = {}
    if not isinstance(config, dict):
        raise ValueError(f"Configuration file {path} must hold a mapping, got {type(config).__name__}")

    if "extends" in config:
        base_path = Path(config.pop("extends")).expanduser()
        if not base_path.is_absolute():
            base_path = path.parent / base_path
        logger.debug("config %s extends %s", path, base_path)
        config = deep_merge(load_config(base_path), config)

    return config


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Copy of ``base`` with ``override`` merged in; nested mappings merge recursively.

    Examples:
        >>> deep_merge({"caps": {"a": 1, "b": 2}}, {"caps": {"b": 3}})
        {'caps': {'a': 1, 'b': 3}}
    """
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def check_keys(config: Dict[str, Any], allowed: Dict[str, Any], where: str = "") -> None:
    """Raise :class:`ConfigKeyError` for keys of ``config`` missing from ``allowed``.

    Nested mappings are checked against the matching nested mapping of
    ``allowed``; leaves are not inspected.
    """
    for key, value in config.items():
        name = f"{where}.{key}" if where else str(key)
        if key not in allowed:
            raise ConfigKeyError(f"unknown configuration key '{name}'")
        if isinstance(value, dict) and isinstance(allowed[key], dict):
            check_keys(value, allowed[key], name)


def load_defaults() -> Dict[str, Any]:
    return load_config(DEFAULTS_FILE)


def load_merged(user_file: Optional[PathLike] = None) -> Dict[str, Any]:
    """Shipped defaults with ``user_file`` (if any) merged over them."""
    defaults = load_defaults()
    if user_file is None:
        return defaults
    user = load_config(user_file)
    check_keys(user, defaults)
    logger.debug("merged user config %s", os.fspath(user_file))
    return deep_merge(defaults, user)


def dump_config(config: Dict[str, Any], file_path: PathLike) -> None:
    """
    Dump configuration to a YAML file.

    Raises
    ------
    ValueError
        If the configuration cannot be serialized
    """
    try:
        with open(Path(file_path).expanduser(), "w") as f:
            yaml.safe_dump(config, f, default_flow_style=False, sort_keys=False)
    except yaml.YAMLError as e:
        raise ValueError(f"Error dumping configuration: {e}") from e
