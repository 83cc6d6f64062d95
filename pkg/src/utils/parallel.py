"""
Ordered parallel map for corpus-level checks
Results come back in input order regardless of scheduling
"""
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Sequence, TypeVar

from loguru import logger

from src.config.settings import get_settings

T = TypeVar('T')
R = TypeVar('R')


def ordered_map(func: Callable[[T], R], items: Sequence[T], max_workers: Optional[int] = None) -> List[R]:
    """Apply func to every item, possibly concurrently, preserving order"""
    workers = max_workers if max_workers is not None else get_settings().max_workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    results: List[Optional[R]] = [None] * len(items)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(func, item): index for index, item in enumerate(items)}
        for future in as_completed(futures):
            index = futures[future]
            # Re-raises the worker's exception in the caller
            results[index] = future.result()

    logger.debug(f"ordered_map processed {len(items)} items on {workers} workers")
    return results  # type: ignore[return-value]
