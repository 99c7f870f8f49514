from multiprocessing import Pool

from reglat.core import make_lattice
from reglat.globalrep import regular_verdict


def verdict_of(coeffs, bound):
    """
    Compute a verdict in a worker process.

    Args:
        coeffs (tuple of int): The lattice coefficients.
        bound (int): The sieve bound.

    Returns:
        dict: The serialized verdict.
    """
    return regular_verdict(make_lattice(coeffs), bound).to_dict()


def parallel_verdicts_test(lattices, bound, processes=4):
    """
    Verdicts computed concurrently on a pool match the serial ones, in submission order.
    """
    pool = Pool(processes)
    try:
        pending = [pool.apply_async(verdict_of, (coeffs, bound)) for coeffs in lattices]
        parallel = [result.get(timeout=600) for result in pending]
    finally:
        pool.close()
        pool.join()
    assert parallel == [verdict_of(coeffs, bound) for coeffs in lattices]
