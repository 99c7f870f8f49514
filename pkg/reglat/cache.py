import logging
from threading import RLock

LOGGER = logging.getLogger("reglat.cache")


class SieveCache:
    """
    A store of representation bitmaps keyed by ``(coeffs, bound)``. Every operation raises
    ``NotImplementedError`` until a subclass overrides it; :py:mod:`reglat.extra.memory` and
    :py:mod:`reglat.extra.local` provide the two implementations used by the package.

    Attributes:
        hits (int): Lookups answered from the cache.
        misses (int): Lookups that found nothing.
        stores (int): Bitmaps added.
    """
    def __init__(self):
        self.hits = 0
        self.misses = 0
        self.stores = 0
        self._lock = RLock()

    def get(self, coeffs, bound):
        """
        Args:
            coeffs (tuple of int): Ascending coefficients.
            bound (int): The sieve bound.

        Returns:
            numpy.ndarray: The read-only bitmap of length ``bound + 1``, or None.

        Raises:
            NotImplementedError: If the method is not overridden.
        """
        raise NotImplementedError()

    def put(self, coeffs, bound, bits):
        """
        Raises:
            NotImplementedError: If the method is not overridden.
        """
        raise NotImplementedError()

    def find(self, coeffs, at_least):
        """
        Look for any stored bitmap of ``coeffs`` whose bound is at least ``at_least``.

        Returns:
            numpy.ndarray: A bitmap, or None.

        Raises:
            NotImplementedError: If the method is not overridden.
        """
        raise NotImplementedError()

    def _record(self, found):
        with self._lock:
            if found is None:
                self.misses += 1
            else:
                self.hits += 1
        return found

    def stats(self):
        with self._lock:
            return {"hits": self.hits, "misses": self.misses, "stores": self.stores}
