"""Run manifest listing artifacts, resolved config and outcome."""

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

MANIFEST_NAME = "manifest.json"


class RunManifest:
    """Manifest model written next to every command's outputs."""

    def __init__(self, data: Dict[str, Any]):
        self.command = data.get("command")
        self.config = data.get("config", {})
        self.artifacts: List[str] = list(data.get("artifacts", []))
        self.passed = data.get("passed", False)
        self.elapsed = data.get("elapsed", 0.0)
        self.summary = data.get("summary", {})
        self.error = data.get("error")
        self.created = data.get("created")

    def add_artifact(self, path: Path, root: Optional[Path] = None) -> None:
        path = Path(path)
        name = str(path.relative_to(root)) if root and path.is_relative_to(root) else str(path)
        if name not in self.artifacts:
            self.artifacts.append(name)

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "command": self.command,
            "created": self.created,
            "passed": self.passed,
            "elapsed": self.elapsed,
            "config": self.config,
            "artifacts": self.artifacts,
            "summary": self.summary,
        }
        if self.error:
            result["error"] = self.error
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        return cls(data)

    @classmethod
    def load(cls, path: Path) -> "RunManifest":
        with open(path, "r") as f:
            return cls.from_dict(json.load(f))

    def write(self, output_dir: Path) -> Path:
        """
        Write manifest.json atomically.

        Raises:
            OSError: if the file cannot be written
        """
        output_dir = Path(output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        path = output_dir / MANIFEST_NAME
        temp = path.with_suffix(".tmp")
        try:
            with open(temp, "w") as f:
                json.dump(self.to_dict(), f, indent=2, default=_json_default)
                f.flush()
                os.fsync(f.fileno())
            temp.replace(path)
        except OSError as e:
            if temp.exists():
                temp.unlink()
            raise OSError(f"failed to write {path}: {e}") from e
        return path


def _json_default(value):
    # numpy scalars and arrays
    if hasattr(value, "tolist"):
        return value.tolist()
    return str(value)
