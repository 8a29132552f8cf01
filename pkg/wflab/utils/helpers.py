"""Helper utility functions."""

import os
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def format_duration(seconds: float) -> str:
    """Format duration in seconds to human-readable string."""
    if seconds < 1:
        return f"{int(round(seconds * 1000))}ms"
    elif seconds < 60:
        return f"{seconds:.1f}s"
    elif seconds < 3600:
        minutes = int(seconds // 60)
        secs = int(seconds % 60)
        return f"{minutes}m {secs}s"
    else:
        hours = int(seconds // 3600)
        minutes = int((seconds % 3600) // 60)
        return f"{hours}h {minutes}m"


def timestamp() -> str:
    """UTC timestamp for manifests."""
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], parallel: bool = False,
                 max_workers: Optional[int] = None) -> List[R]:
    """
    Map fn over items, optionally on a thread pool.

    Results keep the input order. The numeric kernels release the GIL inside
    numpy, so threads are enough for independent runs.
    """
    items = list(items)
    if not parallel or len(items) < 2:
        return [fn(item) for item in items]
    workers = max_workers or min(len(items), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
