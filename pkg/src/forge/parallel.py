"""Optional thread-level parallelism, bounded by ``FORGE_THREADS``."""

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["thread_count", "pmap"]


def thread_count():
    raw = os.environ.get("FORGE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FORGE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"FORGE_THREADS must be a positive integer, got {raw!r}")
    return n


def pmap(fn, items):
    """``list(map(fn, items))``; results keep input order whatever the thread count."""
    items = list(items)
    n = min(thread_count(), len(items))
    if n <= 1:
        return [fn(a) for a in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
