"""Shared fork-based worker pool for the parallel algebra paths.

A single persistent pool amortizes process startup across the many MSM,
FFT and ceremony calls in a benchmark run. Jobs are self-contained (all
data passed in the call), so the fork snapshot never goes stale. Results
are combined in deterministic order; worker count never changes results.
"""

from __future__ import annotations

import atexit
from multiprocessing import get_context

_pool = None
_pool_size = 0


def shared_pool(workers: int):
    """Pool with at least `workers` processes, or None for serial paths."""
    global _pool, _pool_size
    workers = int(workers)
    if workers <= 1:
        return None
    if _pool is not None and _pool_size >= workers:
        return _pool
    shutdown_pool()
    try:
        _pool = get_context("fork").Pool(workers)
    except OSError:
        return None
    _pool_size = workers
    return _pool


def shutdown_pool():
    global _pool, _pool_size
    if _pool is not None:
        _pool.terminate()
        _pool.join()
        _pool = None
        _pool_size = 0


atexit.register(shutdown_pool)
