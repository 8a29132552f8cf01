"""
Configuration management for the Willmore flow laboratory.
Handles environment detection, configuration loading, and defaults.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import dotenv_values, load_dotenv

logger = logging.getLogger(__name__)

# Base paths
BASE_DIR = Path(__file__).parent
load_dotenv(BASE_DIR / ".env")

DATA_DIR = Path(os.getenv('WFLAB_OUTPUT_DIR') or (BASE_DIR / "data"))

# Environment flags
DEFAULT_GRID_N = int(os.getenv('WFLAB_GRID_N', '64'))
PARALLEL = os.getenv('WFLAB_PARALLEL', 'false').lower() == 'true'
LOG_LEVEL = os.getenv('WFLAB_LOG_LEVEL', 'INFO').upper()


def get_default_experiment_config() -> Dict[str, Any]:
    """Return default experiment configuration (flat key=value)."""
    return {
        "command": "",
        "grid_n": DEFAULT_GRID_N,
        "seed": 7,
        "amplitude": 0.02,
        "initial": "random",
        "runs": 1,
        "dt": 1e-3,
        "t_end": 20.0,
        "residual_tol": 1e-8,
        "a0_floor": 0.5,
        "record_every": 10,
        "variant": "moebius",
        "max_freq": 4,
        "z": "",
        "z_count": 20,
        "z_radius": 0.1,
        "eps_fd": 1e-4,
        "oversample": 2,
        "output_dir": str(DATA_DIR),
        "parallel": PARALLEL,
        "snapshots": False,
        "snapshot_every": 50,
    }


def load_config(file_path: Path, default: Dict[str, Any]) -> Dict[str, Any]:
    """Load key=value configuration, creating the file with defaults if it doesn't exist."""
    file_path = Path(file_path)
    config = dict(default)
    if file_path.exists():
        try:
            values = dotenv_values(file_path)
        except (OSError, UnicodeDecodeError) as e:
            logger.error(f"Error loading config {file_path}: {e}. Using defaults.")
            return config
        config.update({key: value for key, value in values.items() if value is not None})
        return config

    save_config(file_path, default)
    return config


def save_config(file_path: Path, config: Dict[str, Any]) -> None:
    """Save configuration as key=value lines.

    Raises:
        OSError: If the file or its directory cannot be written
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{key}={_format_value(value)}\n" for key, value in config.items()]

    temp_file = file_path.with_suffix(file_path.suffix + '.tmp')
    try:
        # Write to temporary file first, then rename (atomic write)
        with open(temp_file, 'w') as f:
            f.writelines(lines)
            f.flush()
            os.fsync(f.fileno())

        if not temp_file.exists() or temp_file.stat().st_size == 0:
            raise OSError(f"Failed to write temporary file {temp_file}")

        temp_file.replace(file_path)

        if file_path.stat().st_size == 0:
            raise OSError(f"File {file_path} was created but is empty")
        logger.debug(f"Saved config to {file_path} ({file_path.stat().st_size} bytes)")

    except OSError as e:
        logger.error(f"Error saving config {file_path}: {e}")
        if isinstance(e, PermissionError):
            logger.error(f"Permission denied - check that {file_path.parent} is writable")
        raise


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else str(value)


def parse_overrides(args: List[str]) -> Dict[str, str]:
    """
    Turn ["--key", "value", "--other=value"] into a dict.

    A flag without a value (followed by another flag or nothing) is read as true.

    Raises:
        ValueError: on a token that is not a --key option
    """
    overrides: Dict[str, str] = {}
    i = 0
    while i < len(args):
        token = args[i]
        if not token.startswith("--") or len(token) <= 2:
            raise ValueError(f"unexpected argument {token!r}")
        key = token[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        elif i + 1 < len(args) and not args[i + 1].startswith("--"):
            value = args[i + 1]
            i += 1
        else:
            value = "true"
        overrides[key.replace("-", "_")] = value
        i += 1
    return overrides


def get_experiment_config(file_path: Optional[Path] = None,
                          overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Defaults, then the config file, then command-line overrides."""
    if file_path is None:
        config = get_default_experiment_config()
    else:
        config = load_config(Path(file_path), get_default_experiment_config())
    config.update(overrides or {})
    return config
