"""Configuration model for flow runs."""

from dataclasses import asdict, dataclass, fields
from typing import Any, Dict

from ..errors import ConfigError
from ..geometry.fermi import TUBE_HALF_WIDTH

VARIANTS = ("moebius", "classical")


@dataclass(frozen=True)
class FlowConfig:
    """Flow parameters with per-field validation."""

    dt: float = 1e-3
    t_end: float = 20.0
    residual_tol: float = 1e-8
    a0_floor: float = 0.5
    record_every: int = 10
    variant: str = "moebius"
    tube_half_width: float = TUBE_HALF_WIDTH
    energy_slack: float = 1e-9

    def __post_init__(self):
        if not 0.0 < self.dt <= 1e-2:
            raise ConfigError(f"dt must lie in (0, 1e-2], got {self.dt}")
        if not self.t_end > 0.0:
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if not 0.0 < self.residual_tol <= 1e-4:
            raise ConfigError(f"residual_tol must lie in (0, 1e-4], got {self.residual_tol}")
        if not 0.0 < self.a0_floor < 1.0:
            raise ConfigError(f"a0_floor must lie in (0, 1), got {self.a0_floor}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ConfigError(f"record_every must be a positive integer, got {self.record_every}")
        if self.variant not in VARIANTS:
            raise ConfigError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not 0.0 < self.tube_half_width < 0.785:
            raise ConfigError(f"tube_half_width must lie inside the chart, got {self.tube_half_width}")
        if self.energy_slack < 0.0:
            raise ConfigError(f"energy_slack must be >= 0, got {self.energy_slack}")

    @property
    def linear_scale(self) -> float:
        """Factor multiplying T_CC in the linearization of the chosen variant."""
        return 1.0 if self.variant == "moebius" else 4.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FlowConfig":
        """Create config from dictionary, ignoring unrelated keys."""
        known = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for name, value in data.items():
            if name not in known or value is None or value == "":
                continue
            try:
                if name == "variant":
                    kwargs[name] = str(value)
                elif name == "record_every":
                    kwargs[name] = int(value)
                else:
                    kwargs[name] = float(value)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"invalid value for {name}: {value!r} ({e})")
        return cls(**kwargs)
