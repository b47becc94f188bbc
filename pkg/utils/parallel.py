"""
Ordered map over independent replications
"""

import logging
from concurrent.futures import ProcessPoolExecutor

logger = logging.getLogger(__name__)


def map_ordered(fn, items, workers=1, chunksize=8):
    """Apply fn to every item, results in input order regardless of worker count.

    fn must be a module-level function so it can be pickled for worker processes.
    """
    items = list(items)
    if workers is None or workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug('dispatching %d tasks to %d workers', len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items, chunksize=chunksize))
