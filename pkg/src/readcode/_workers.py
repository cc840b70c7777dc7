import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    """Worker cap from READCODE_THREADS (default 1)."""
    try:
        return max(1, int(os.environ.get("READCODE_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """``list(map(fn, items))``, fanned out over threads when allowed; order is preserved."""
    items = list(items)
    threads = min(thread_count(), len(items))
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
