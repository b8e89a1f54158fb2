"""Worker-thread cap (KAPPA_NC_THREADS) and an order-preserving parallel map."""

from __future__ import annotations

import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "KAPPA_NC_THREADS"

T = TypeVar("T")
R = TypeVar("R")

_warned_values: set[str] = set()
_warn_lock = threading.Lock()


def worker_count(default: Optional[int] = None) -> int:
    """Number of worker threads allowed for per-slice work.

    Reads ``KAPPA_NC_THREADS``; unset means ``default`` (or the CPU count
    capped at 8). Invalid values fall back to a single worker.
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or not raw.strip():
        if default is not None:
            return max(1, default)
        return max(1, min(8, os.cpu_count() or 1))

    try:
        value = int(raw)
    except ValueError:
        value = 0

    if value < 1:
        with _warn_lock:
            if raw not in _warned_values:
                _warned_values.add(raw)
                logger.warning(f"Ignoring invalid {THREADS_ENV_VAR}={raw!r}; using 1 worker")
        return 1
    return value


def chunked(items: Sequence[T], chunks: int) -> List[Sequence[T]]:
    """Split ``items`` into at most ``chunks`` contiguous, non-empty slices."""
    if not items:
        return []
    chunks = max(1, min(chunks, len(items)))
    size, extra = divmod(len(items), chunks)
    result = []
    start = 0
    for index in range(chunks):
        stop = start + size + (1 if index < extra else 0)
        result.append(items[start:stop])
        start = stop
    return result


def parallel_map(
    func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None
) -> List[R]:
    """Apply ``func`` to every item, returning results in input order.

    Runs serially when only one worker is allowed.
    """
    work = list(items)
    workers = worker_count() if workers is None else max(1, workers)
    if workers == 1 or len(work) <= 1:
        return [func(item) for item in work]

    with ThreadPoolExecutor(max_workers=min(workers, len(work))) as executor:
        return list(executor.map(func, work))


__all__ = ["THREADS_ENV_VAR", "worker_count", "chunked", "parallel_map"]
