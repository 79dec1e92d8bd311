"""Optional thread fan-out for per-point grid work.

``MOFRAME_THREADS`` caps the worker count (default 1, i.e. serial). Results
always come back in grid order so downstream reductions are reproducible.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def max_threads() -> int:
    raw = os.environ.get("MOFRAME_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def grid_map(fn, values):
    values = list(values)
    n = min(max_threads(), len(values))
    if n <= 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, values))
