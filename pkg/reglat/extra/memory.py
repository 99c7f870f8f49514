from collections import OrderedDict

from reglat.cache import SieveCache
from reglat.settings import MEMORY_CACHE_ENTRIES


class MemorySieveCache(SieveCache):
    """
    Implements an in memory, least recently used :py:class:`~reglat.cache.SieveCache`.

    Args:
        max_entries (int): Number of bitmaps kept before the oldest is evicted.
    """
    def __init__(self, max_entries=MEMORY_CACHE_ENTRIES):
        super().__init__()
        self.max_entries = max_entries
        self._entries = OrderedDict()

    def get(self, coeffs, bound):
        with self._lock:
            bits = self._entries.get((coeffs, bound))
            if bits is not None:
                self._entries.move_to_end((coeffs, bound))
            return self._record(bits)

    def put(self, coeffs, bound, bits):
        with self._lock:
            self._entries[(coeffs, bound)] = bits
            self._entries.move_to_end((coeffs, bound))
            self.stores += 1
            while len(self._entries) > self.max_entries:
                self._entries.popitem(last=False)

    def find(self, coeffs, at_least):
        with self._lock:
            for (key, bound), bits in self._entries.items():
                if key == coeffs and bound >= at_least:
                    return bits
        return None

    def clear(self):
        with self._lock:
            self._entries.clear()

    def __len__(self):
        return len(self._entries)
