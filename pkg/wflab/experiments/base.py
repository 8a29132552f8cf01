"""Abstract base class for experiment commands."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from .models import ExperimentConfig


@dataclass
class ExperimentReport:
    """Outcome of one command: built-in assertions, summary values and written files."""

    passed: bool = True
    summary: Dict[str, Any] = field(default_factory=dict)
    artifacts: List[Path] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    def check(self, condition: bool, message: str) -> bool:
        """Record a failed assertion; no assertion is warn-only."""
        if not condition:
            self.passed = False
            self.failures.append(message)
        return bool(condition)

    def fail(self, message: str) -> None:
        self.check(False, message)

    def add_artifact(self, path: Optional[Path]) -> None:
        if path is not None:
            self.artifacts.append(Path(path))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "summary": self.summary,
            "failures": self.failures,
            "artifacts": [str(p) for p in self.artifacts],
        }


class ExperimentType(ABC):
    """Abstract base class for experiment commands."""

    @property
    @abstractmethod
    def type_name(self) -> str:
        """Return the command identifier (e.g., 'spectrum')."""
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        """Return human-readable name."""
        pass

    @abstractmethod
    def execute(self, cfg: ExperimentConfig, output_dir: Path) -> ExperimentReport:
        """
        Run the command and write its artifacts.

        Args:
            cfg: Validated experiment configuration
            output_dir: Directory receiving this command's files

        Returns:
            ExperimentReport with pass/fail of the built-in assertions
        """
        pass

    def validate_config(self, cfg: ExperimentConfig) -> tuple[bool, Optional[str]]:
        """
        Command-specific checks on top of ExperimentConfig.validate().

        Returns:
            Tuple of (is_valid, error_message)
        """
        return True, None
