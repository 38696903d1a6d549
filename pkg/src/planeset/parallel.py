"""Worker-pool helper: deterministic ordered map over items."""

from __future__ import annotations

import multiprocessing
import os


def effective_jobs(jobs: int | None) -> int:
    """Requested worker count; the PLANESET_JOBS variable wins when set."""
    env = os.environ.get("PLANESET_JOBS")
    if env:
        return max(1, int(env))
    return max(1, jobs or 1)


def pmap(fn, items, jobs: int = 1) -> list:
    """map() preserving item order, optionally across processes."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(min(jobs, len(items))) as pool:
        return pool.map(fn, items)
