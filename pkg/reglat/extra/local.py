import hashlib
import logging
import os
import tempfile

import numpy as np

from reglat.extra.memory import MemorySieveCache
from reglat.settings import MEMORY_CACHE_ENTRIES

LOGGER = logging.getLogger("reglat.extra.local")

MAGIC = b"REGLAT-SIEVE v1"
SUFFIX = ".sieve"


def encode_sieve(coeffs, bound, bits):
    """
    Serialize a bitmap: a three line header ``REGLAT-SIEVE v1``, the coefficients and the bound, followed by
    the bitmap packed little-endian, one bit per integer.
    """
    header = b"%s\n%s\n%d\n" % (MAGIC, ",".join(str(a) for a in coeffs).encode(), bound)
    return header + np.packbits(bits, bitorder="little").tobytes()


def decode_sieve(data):
    """
    Returns:
        tuple: ``(coeffs, bound, bits)``, or None if the header is not a valid sieve header.
    """
    parts = data.split(b"\n", 3)
    if len(parts) != 4 or parts[0] != MAGIC:
        return None
    try:
        coeffs = tuple(int(a) for a in parts[1].split(b","))
        bound = int(parts[2])
    except ValueError:
        return None
    packed = np.frombuffer(parts[3], dtype=np.uint8)
    if len(packed) * 8 < bound + 1:
        return None
    bits = np.unpackbits(packed, count=bound + 1, bitorder="little").astype(bool)
    bits.flags.writeable = False
    return coeffs, bound, bits


class LocalSieveCache(MemorySieveCache):
    """
    Implements a :py:class:`~reglat.cache.SieveCache` backed by a directory on the local filesystem, with an
    in memory layer in front of it.

    Args:
        directory (str): Where sieve files are kept. Created if missing.
        max_entries (int): Size of the in memory layer.
    """
    def __init__(self, directory, max_entries=MEMORY_CACHE_ENTRIES):
        super().__init__(max_entries)
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _prefix(self, coeffs):
        return hashlib.sha1(",".join(str(a) for a in coeffs).encode()).hexdigest()

    def _path(self, coeffs, bound):
        return os.path.join(self.directory, "%s-%d%s" % (self._prefix(coeffs), bound, SUFFIX))

    def _load(self, path, coeffs):
        try:
            with open(path, "rb") as f:
                decoded = decode_sieve(f.read())
        except OSError:
            return None
        if decoded is None or decoded[0] != coeffs:
            LOGGER.debug("Ignoring unreadable sieve file %s" % path)
            return None
        return decoded

    def get(self, coeffs, bound):
        with self._lock:
            bits = self._entries.get((coeffs, bound))
            if bits is None:
                decoded = self._load(self._path(coeffs, bound), coeffs)
                if decoded is not None:
                    bits = decoded[2]
                    super().put(coeffs, bound, bits)
                    self.stores -= 1
            return self._record(bits)

    def put(self, coeffs, bound, bits):
        with self._lock:
            super().put(coeffs, bound, bits)
            handle, temp_path = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(handle, "wb") as f:
                    f.write(encode_sieve(coeffs, bound, bits))
                os.replace(temp_path, self._path(coeffs, bound))
            except Exception:
                LOGGER.debug("Discarding partial sieve file %s" % temp_path)
                os.unlink(temp_path)
                raise

    def find(self, coeffs, at_least):
        bits = super().find(coeffs, at_least)
        if bits is not None:
            return bits
        prefix = self._prefix(coeffs) + "-"
        with self._lock:
            for name in sorted(os.listdir(self.directory)):
                if not (name.startswith(prefix) and name.endswith(SUFFIX)):
                    continue
                bound = int(name[len(prefix):-len(SUFFIX)])
                if bound >= at_least:
                    decoded = self._load(os.path.join(self.directory, name), coeffs)
                    if decoded is not None:
                        return decoded[2]
        return None
