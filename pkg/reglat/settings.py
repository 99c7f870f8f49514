import os

MAX_COEFFICIENT = 2 ** 62
DEFAULT_BOUND = 10 ** 5
MAX_SIEVE_BOUND = 5 * 10 ** 7
PSI_SAFEGUARD = 10 ** 6
STABILITY_CAP = 64
SEARCH_STATE_CAP = 2 ** 20
SELF_CHECK_STATE_CAP = 2 ** 21
MEMORY_CACHE_ENTRIES = 128

CACHE_ENV = "REGLAT_CACHE"
JOBS_ENV = "REGLAT_JOBS"


def cache_dir_from_env():
    """
    Returns:
        str: The sieve cache directory named by ``REGLAT_CACHE``, None when unset or empty.
    """
    value = os.environ.get(CACHE_ENV, "").strip()
    return value or None


def default_jobs():
    """
    Returns:
        int: Worker count from ``REGLAT_JOBS``, falling back to the logical CPU count.
    """
    value = os.environ.get(JOBS_ENV, "").strip()
    if value.isdigit() and int(value) > 0:
        return int(value)
    return os.cpu_count() or 1
