"""Optional process-level parallelism, capped by ``FILIFORM_THREADS``."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count(env: dict | None = None) -> int:
    """Workers allowed by FILIFORM_THREADS; unset or 0 means one per CPU."""
    env = os.environ if env is None else env
    raw = env.get("FILIFORM_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FILIFORM_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("FILIFORM_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def pmap(fn, items, workers: int = 1) -> list:
    """Ordered map; fans out to a process pool when workers > 1."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


def chunks(n: int, parts: int) -> list[range]:
    """Split 1..n into at most ``parts`` contiguous ranges."""
    parts = max(1, min(parts, n))
    size, extra = divmod(n, parts)
    out, start = [], 1
    for p in range(parts):
        stop = start + size + (p < extra)
        out.append(range(start, stop))
        start = stop
    return out
