"""Grayscale PNG previews of scalar fields."""

import logging
from pathlib import Path
from typing import Optional

import numpy as np
from PIL import Image

from ..spectral.grid import ScalarField

logger = logging.getLogger(__name__)


def field_image(field: ScalarField, scale: int = 4) -> Image.Image:
    """
    Map a field to 8-bit gray, symmetric around zero (mid-gray = 0).

    u runs down the rows and v across the columns.
    """
    values = field.values
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        pixels = np.full(values.shape, 128, dtype=np.uint8)
    else:
        pixels = np.clip(np.round(127.5 + 127.5 * values / peak), 0, 255).astype(np.uint8)
    image = Image.fromarray(pixels)
    if scale > 1:
        image = image.resize((values.shape[1] * scale, values.shape[0] * scale), Image.Resampling.NEAREST)
    return image


class FieldPreviewOutput:
    """Save field previews to files."""

    def __init__(self, output_dir: Path, scale: int = 4):
        self.output_dir = Path(output_dir)
        self.scale = scale
        self._initialized = False

    def initialize(self) -> bool:
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            self._initialized = True
            return True
        except OSError as e:
            logger.error(f"Failed to initialize preview output {self.output_dir}: {e}")
            return False

    def save_field(self, field: ScalarField, name: str) -> Optional[Path]:
        """Write <name>.png; None if the output is not initialized or the write fails."""
        if not self._initialized:
            return None
        filename = self.output_dir / f"{name}.png"
        try:
            field_image(field, self.scale).save(filename)
        except OSError as e:
            logger.error(f"Failed to save preview {filename}: {e}")
            return None
        return filename
