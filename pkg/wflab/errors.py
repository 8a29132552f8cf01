"""Exception hierarchy for the laboratory."""

from typing import Any, Dict, List, Optional


class WflabError(Exception):
    """Base class for all laboratory errors."""


class InvalidFieldError(WflabError, ValueError):
    """Input field or grid is malformed (non-finite values, bad shape, odd n)."""


class ConfigError(WflabError, ValueError):
    """Configuration value violates a module precondition."""


class ChartDomainError(WflabError):
    """Point or distance function leaves the Fermi tube around the Clifford torus."""


class ImmersionError(WflabError):
    """Induced metric is degenerate, the graph map is not an immersion."""


class FlowUndefinedError(WflabError):
    """Umbilic guard violated: min |A0|^2 dropped below the floor."""


class NotAGraphError(WflabError):
    """Transformed surface is not a normal graph over the Clifford torus."""


class PoleProximityError(WflabError):
    """Stereographic projection requested too close to the pole."""


class InsufficientDataError(WflabError):
    """Not enough samples to fit a rate."""


class FlowAbortedError(WflabError):
    """Flow run aborted; carries the diagnostic payload of the failing step."""

    def __init__(self, reason: str, step: int, time: float,
                 diagnostics: Optional[Dict[str, Any]] = None,
                 debug_logs: Optional[List[Dict[str, Any]]] = None):
        super().__init__(f"flow aborted at step {step} (t={time:.6g}): {reason}")
        self.reason = reason
        self.step = step
        self.time = time
        self.diagnostics = diagnostics or {}
        self.debug_logs = debug_logs or []

    def to_dict(self) -> Dict[str, Any]:
        """Convert abort payload to dictionary."""
        return {
            "reason": self.reason,
            "step": self.step,
            "time": self.time,
            "diagnostics": self.diagnostics,
            "debug_logs": self.debug_logs,
        }
