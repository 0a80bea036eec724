"""Deterministic fan-out over worker processes.

Results always come back in input order, so every reduction done by the
callers is independent of the worker count.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_VAR = "RCST_THREADS"


def resolve_workers(requested: int | None = None) -> int:
    """Worker count: ``RCST_THREADS`` if set, else ``requested``, else all cores."""
    env = os.environ.get(ENV_VAR)
    if env:
        value = int(env)
    elif requested is not None:
        value = requested
    else:
        value = os.cpu_count() or 1
    if value < 1:
        raise ValueError("worker count must be positive")
    return value


def parallel_map(fn: Callable[[T], R], items: Sequence[T] | Iterable[T], workers: int = 1) -> list[R]:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    workers = min(workers, len(items))
    chunk = max(1, len(items) // (workers * 4))
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def argmin(pairs: Iterable[tuple[tuple, R]]) -> tuple[tuple, R]:
    """Entry with the smallest key; keys must be totally ordered and distinct on ties."""
    return min(pairs, key=lambda kv: kv[0])
