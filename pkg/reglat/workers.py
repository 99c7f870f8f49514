import logging
from multiprocessing import Pool

LOGGER = logging.getLogger("reglat.workers")


def map_ordered(func, arguments, jobs=1):
    """
    Apply ``func`` to every argument tuple, on a process pool when ``jobs > 1``. Results come back in
    submission order whatever the scheduling.

    Args:
        func (callable): A module level function, so it can be sent to worker processes.
        arguments (list of tuple): Positional arguments for each call.
        jobs (int): Number of worker processes.

    Returns:
        list: The results, in the order of ``arguments``.
    """
    arguments = list(arguments)
    if jobs <= 1 or len(arguments) <= 1:
        return [func(*args) for args in arguments]
    LOGGER.debug("Running %d jobs of %s on %d workers" % (len(arguments), func.__name__, jobs))
    pool = Pool(min(jobs, len(arguments)))
    try:
        pending = [pool.apply_async(func, args) for args in arguments]
        results = [result.get() for result in pending]
    finally:
        pool.close()
        pool.join()
    return results
