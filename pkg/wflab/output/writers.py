"""CSV tables, scalar-field files and OBJ meshes."""

import csv
import logging
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from ..errors import InvalidFieldError
from ..flow.trajectory import TRAJECTORY_COLUMNS, FlowTrajectory
from ..geometry.sphere import stereographic
from ..spectral.grid import GridSpec, ScalarField

logger = logging.getLogger(__name__)

FIELD_HEADER = ("u", "v", "value")


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def write_table_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """Write rows with floats at full precision; bodies are byte-identical across reruns."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(value) for value in row])
    except OSError as e:
        raise OSError(f"failed to write {path}: {e}") from e
    logger.debug(f"Wrote {path}")
    return path


def write_field_csv(path: Path, field: ScalarField) -> Path:
    """Row-major "u,v,value" samples."""
    U, V = field.grid.mesh
    rows = zip(U.reshape(-1), V.reshape(-1), field.values.reshape(-1))
    return write_table_csv(path, FIELD_HEADER, rows)


def read_field_csv(path: Path, grid: Optional[GridSpec] = None) -> ScalarField:
    """Inverse of write_field_csv; the grid is inferred from the row count if omitted."""
    path = Path(path)
    try:
        with open(path, newline="") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            values = [float(row[2]) for row in reader if row]
    except OSError as e:
        raise OSError(f"failed to read {path}: {e}") from e
    except (ValueError, IndexError) as e:
        raise InvalidFieldError(f"malformed field file {path}: {e}") from e
    if header is None or tuple(header) != FIELD_HEADER:
        raise InvalidFieldError(f"{path} is not a field file (header {header})")
    n = int(round(np.sqrt(len(values))))
    if n * n != len(values):
        raise InvalidFieldError(f"{path}: {len(values)} samples do not form a square grid")
    grid = grid or GridSpec(n)
    if grid.n != n:
        raise InvalidFieldError(f"{path}: {n}x{n} samples, expected grid {grid.n}")
    return ScalarField(grid, np.array(values).reshape(n, n))


def write_trajectory_csv(path: Path, trajectory: FlowTrajectory) -> Path:
    return write_table_csv(path, TRAJECTORY_COLUMNS, trajectory.rows())


def write_obj(path: Path, points: np.ndarray, pole=(0.0, 0.0, 0.0, 1.0)) -> Path:
    """
    Triangle mesh of a doubly periodic surface.

    Args:
        points: (n, n, 4) samples on S^3 (projected stereographically from pole)
            or (n, n, 3) samples already in R^3
    """
    path = Path(path)
    points = np.asarray(points, dtype=float)
    if points.shape[-1] == 4:
        points = stereographic(points, pole)
    if points.ndim != 3 or points.shape[-1] != 3:
        raise InvalidFieldError(f"expected (n, n, 3|4) samples, got {points.shape}")
    n0, n1 = points.shape[:2]
    index = np.arange(n0 * n1).reshape(n0, n1) + 1
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            f.write(f"# periodic {n0}x{n1} grid\n")
            for x, y, z in points.reshape(-1, 3):
                f.write(f"v {x:.12g} {y:.12g} {z:.12g}\n")
            for i in range(n0):
                for j in range(n1):
                    a = index[i, j]
                    b = index[(i + 1) % n0, j]
                    c = index[(i + 1) % n0, (j + 1) % n1]
                    d = index[i, (j + 1) % n1]
                    f.write(f"f {a} {b} {c}\nf {a} {c} {d}\n")
    except OSError as e:
        raise OSError(f"failed to write {path}: {e}") from e
    logger.debug(f"Wrote mesh {path} ({n0 * n1} vertices)")
    return path
