"""Thread-pool plumbing honoring the CONTFRAME_THREADS cap.

Work is split into fixed-size chunks and partial results are recombined in
chunk order, so numerical output is identical for every thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

CHUNK = 1024


def thread_count() -> int:
    raw = os.environ.get("CONTFRAME_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def ordered_map(fn, items):
    """Map fn over items, preserving input order in the result list."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def chunk_ranges(total: int, chunk: int = CHUNK):
    """Fixed [start, stop) slices independent of thread count."""
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
