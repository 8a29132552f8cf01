"""Utility functions."""

from .helpers import format_duration, parallel_map, timestamp

__all__ = ['format_duration', 'parallel_map', 'timestamp']
