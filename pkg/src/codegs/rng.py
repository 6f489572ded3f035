"""Seeded randomness built on SHAKE-256.

One class serves both as the caller-facing RNG (``Rng()`` draws its seed
from the OS) and as the labelled extendable-output stream that the prover
uses to expand a round seed into its permutations and masks.
"""

import hashlib
import os

import numpy as np

from . import _backend


class Rng:
    """Deterministic byte stream keyed by ``seed`` and a domain ``label``.

    Every call to :meth:`bytes` consumes one block index, so the sequence of
    calls (not just the total length) determines the output.
    """

    __slots__ = ("_key", "_ctr")

    def __init__(self, seed=None, label=b""):
        if seed is None:
            seed = os.urandom(32)
        elif isinstance(seed, int):
            seed = seed.to_bytes(8, "big", signed=False)
        if isinstance(label, str):
            label = label.encode()
        h = hashlib.sha3_256()
        h.update(len(label).to_bytes(2, "big") + label)
        h.update(bytes(seed))
        self._key = h.digest()
        self._ctr = 0

    def child(self, label):
        """Independent stream for a sub-context, derived from this key."""
        return Rng(self._key, label)

    def bytes(self, n):
        ctr = self._ctr
        self._ctr += 1
        return hashlib.shake_256(self._key + ctr.to_bytes(8, "big")).digest(n)

    def seed(self):
        return self.bytes(32)

    def uint64s(self, count):
        return np.frombuffer(self.bytes(8 * count), dtype="<u8").astype(np.uint64)

    def below(self, bound):
        """Uniform integer in ``[0, bound)`` by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        nbytes = max(1, (bound.bit_length() + 7) // 8 + 1)
        limit = (256 ** nbytes // bound) * bound
        while True:
            v = int.from_bytes(self.bytes(nbytes), "big")
            if v < limit:
                return v % bound

    def permutation(self, n):
        """Fisher-Yates shuffle of ``range(n)`` as an int64 array."""
        return _backend.kernels.fisher_yates(self.uint64s(n))

    def sample_positions(self, n, w):
        """``w`` distinct positions out of ``n`` (partial Fisher-Yates)."""
        if not 0 <= w <= n:
            raise ValueError("weight out of range")
        pool = list(range(n))
        rnd = self.uint64s(w).tolist()
        for i in range(w):
            j = i + rnd[i] % (n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:w]
