from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Sequence, TypeVar
import logging
import time

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

def map_in_parallel(
    items: Sequence[T],
    process_func: Callable[[T], R],
    max_workers: int = 1,
    label: str = 'item'
) -> List[R]:
    """
    Apply a function to every item using a thread pool.

    Args:
        items: Items to process
        process_func: Function that processes a single item
        max_workers: Maximum number of worker threads; 1 runs inline
        label: Name used for items in log messages

    Returns:
        Results in the order of `items`
    """
    if max_workers <= 1 or len(items) <= 1:
        return [process_func(item) for item in items]

    results: List[R] = [None] * len(items)
    start_time = time.time()
    logger.debug(f"Processing {len(items)} {label}s on up to {max_workers} threads")

    def run_timed(item):
        item_start = time.time()
        result = process_func(item)
        logger.debug(f"Thread completed {label} {item!r} in {time.time() - item_start:.4f}s")
        return result

    with ThreadPoolExecutor(max_workers=min(max_workers, len(items))) as executor:
        # Submit all jobs simultaneously
        future_to_index = {
            executor.submit(run_timed, item): index
            for index, item in enumerate(items)
        }

        for future in as_completed(future_to_index):
            index = future_to_index[future]
            try:
                results[index] = future.result()
            except Exception as e:
                logger.error(f"Error processing {label} {items[index]!r}: {str(e)}")
                raise

    logger.debug(f"Completed {len(items)} {label}s in {time.time() - start_time:.4f}s")
    return results
