"""Experiment configuration model."""

import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional

from ..errors import ConfigError
from ..flow.models import VARIANTS, FlowConfig
from ..moebius.fields import ConformalParams
from ..spectral.grid import GridSpec

logger = logging.getLogger(__name__)

COMMANDS = ("spectrum", "linearize", "flow", "equilibria", "invariance", "export")
INITIAL_CONDITIONS = ("random", "cos2u")
MAX_AMPLITUDE = math.pi / 8
RECOMMENDED_AMPLITUDE = 0.05
MAX_EQUILIBRIUM_NORM = 0.2

_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off", "")


def _as_bool(name: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError(f"invalid boolean for {name}: {value!r}")


def _as_int(name: str, value: Any) -> int:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"invalid integer for {name}: {value!r}")
    if number != int(number):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    return int(number)


def _as_float(name: str, value: Any) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"invalid number for {name}: {value!r}")
    if not math.isfinite(number):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return number


class ExperimentConfig:
    """Resolved configuration of one command, validated before dispatch."""

    def __init__(self, data: Dict[str, Any]):
        self.command = str(data.get("command") or "")
        self.grid_n = _as_int("grid_n", data.get("grid_n", 64))
        self.seed = _as_int("seed", data.get("seed", 7))
        self.amplitude = _as_float("amplitude", data.get("amplitude", 0.02))
        self.initial = str(data.get("initial") or "random")
        self.runs = _as_int("runs", data.get("runs", 1))
        self.max_freq = _as_int("max_freq", data.get("max_freq", 4))
        self.z_count = _as_int("z_count", data.get("z_count", 20))
        self.z_radius = _as_float("z_radius", data.get("z_radius", 0.1))
        self.eps_fd = _as_float("eps_fd", data.get("eps_fd", 1e-4))
        self.oversample = _as_int("oversample", data.get("oversample", 2))
        self.parallel = _as_bool("parallel", data.get("parallel", False))
        self.snapshots = _as_bool("snapshots", data.get("snapshots", False))
        self.snapshot_every = _as_int("snapshot_every", data.get("snapshot_every", 50))
        self.output_dir = Path(data.get("output_dir") or "data")

        z = data.get("z")
        if isinstance(z, ConformalParams):
            self.z: Optional[ConformalParams] = z
        elif z is None or str(z).strip() == "":
            self.z = None
        else:
            self.z = ConformalParams.parse(z)

        self.flow = FlowConfig.from_dict(data)
        self.validate()

    def validate(self) -> None:
        """
        Check every field against the preconditions of the modules it feeds.

        Raises:
            ConfigError: on the first violated precondition
        """
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}, expected one of {COMMANDS}")
        self._check_grid()
        if self.seed < 0:
            raise ConfigError(f"seed must be unsigned, got {self.seed}")
        if not 0.0 <= self.amplitude < MAX_AMPLITUDE:
            raise ConfigError(f"amplitude must lie in [0, pi/8), got {self.amplitude}")
        if self.initial not in INITIAL_CONDITIONS:
            raise ConfigError(f"initial must be one of {INITIAL_CONDITIONS}, got {self.initial!r}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.max_freq < 1:
            raise ConfigError(f"max_freq must be >= 1, got {self.max_freq}")
        if self.z_count < 1:
            raise ConfigError(f"z_count must be >= 1, got {self.z_count}")
        if not 0.0 <= self.z_radius <= MAX_EQUILIBRIUM_NORM:
            raise ConfigError(f"z_radius must lie in [0, {MAX_EQUILIBRIUM_NORM}], got {self.z_radius}")
        if not 0.0 < self.eps_fd <= 1e-2:
            raise ConfigError(f"eps_fd must lie in (0, 1e-2], got {self.eps_fd}")
        if self.oversample < 1:
            raise ConfigError(f"oversample must be >= 1, got {self.oversample}")
        if self.snapshot_every < 1:
            raise ConfigError(f"snapshot_every must be >= 1, got {self.snapshot_every}")
        if self.command in ("equilibria", "export") and self.z is not None and self.z.norm > MAX_EQUILIBRIUM_NORM:
            raise ConfigError(f"|z| = {self.z.norm:.4g} exceeds {MAX_EQUILIBRIUM_NORM} for {self.command}")
        if self.command == "flow" and self.amplitude > RECOMMENDED_AMPLITUDE:
            logger.warning(f"amplitude {self.amplitude} above {RECOMMENDED_AMPLITUDE}: the flow may leave the chart")

    def _check_grid(self) -> None:
        try:
            GridSpec(self.grid_n)
        except ValueError as e:
            raise ConfigError(str(e)) from e

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.grid_n)

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "command": self.command,
            "grid_n": self.grid_n,
            "seed": self.seed,
            "amplitude": self.amplitude,
            "initial": self.initial,
            "runs": self.runs,
            "max_freq": self.max_freq,
            "z": str(self.z) if self.z is not None else "",
            "z_count": self.z_count,
            "z_radius": self.z_radius,
            "eps_fd": self.eps_fd,
            "oversample": self.oversample,
            "parallel": self.parallel,
            "snapshots": self.snapshots,
            "snapshot_every": self.snapshot_every,
            "output_dir": str(self.output_dir),
        }
        flow = self.flow.to_dict()
        flow.pop("tube_half_width", None)
        flow.pop("energy_slack", None)
        result.update(flow)
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        return cls(data)
