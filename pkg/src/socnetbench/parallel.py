"""Order-preserving map over a process pool."""

from concurrent.futures import ProcessPoolExecutor


def pmap(fn, items, workers=1):
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
