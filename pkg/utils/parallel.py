from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from cli.config import settings

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Map fn over items on up to settings.threads workers, keeping input order."""
    items = list(items)
    workers = min(settings.threads, len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
