"""Order-stable parallel map for enumeration sweeps.

Results always come back in submission order, so output never depends on the
worker count.  Worker functions must be module-level (picklable).
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    import multiprocessing

    with multiprocessing.Pool(processes=min(workers, len(items))) as pool:
        return pool.map(fn, items)
