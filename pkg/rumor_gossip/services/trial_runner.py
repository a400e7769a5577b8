"""Run independent trials, optionally in a process pool, in trial-index order."""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, TypeVar

from ..utils.logger import logger

T = TypeVar('T')


def run_trials(task: Callable[[int], T], trials: int, workers: int = 1) -> List[T]:
    """Evaluate task(0..trials-1); results come back ordered by trial index.

    task must be picklable (a module-level function or a functools.partial of one)
    when workers > 1. Each trial derives its own random stream from its index,
    so the result list does not depend on the number of workers.
    """
    if workers <= 1 or trials <= 1:
        return [task(trial) for trial in range(trials)]

    logger.debug(f"Running {trials} trials on {workers} workers")
    chunksize = max(1, trials // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, range(trials), chunksize=chunksize))
