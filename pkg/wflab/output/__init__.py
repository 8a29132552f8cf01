"""File outputs: CSV tables, field files, meshes, previews and manifests."""

from .writers import (
    read_field_csv,
    write_field_csv,
    write_obj,
    write_table_csv,
    write_trajectory_csv,
)
from .preview import FieldPreviewOutput, field_image
from .manifest import MANIFEST_NAME, RunManifest

__all__ = [
    'read_field_csv',
    'write_field_csv',
    'write_obj',
    'write_table_csv',
    'write_trajectory_csv',
    'FieldPreviewOutput',
    'field_image',
    'MANIFEST_NAME',
    'RunManifest',
]
