"""Index gadgets linking group-member indices to the encryption layer.

Bit convention: ``i2b(j, l)`` is most significant bit first, so
``b2i(a) = sum(a_i * 2^(l-1-i))``.
"""

from __future__ import annotations

import numpy as np

from .algebra.bits import BitMatrix, BitVector
from .errors import DimensionError, RangeError


def i2b(j: int, ell: int) -> BitVector:
    if not 0 <= j < (1 << ell):
        raise RangeError(f"index {j} outside [0, 2^{ell})")
    return BitVector.from_bits([(j >> (ell - 1 - i)) & 1 for i in range(ell)])


def b2i(bits) -> int:
    arr = bits.bits() if isinstance(bits, BitVector) else np.asarray(bits, dtype=np.int64)
    out = 0
    for b in arr.tolist():
        out = (out << 1) | int(b)
    return out


def encode(j: int, ell: int) -> BitVector:
    """Pairs ``(1 - j_i, j_i)`` for each bit of ``i2b(j)``."""
    jb = i2b(j, ell).bits()
    out = np.empty(2 * ell, dtype=np.uint8)
    out[0::2] = 1 - jb
    out[1::2] = jb
    return BitVector.from_bits(out)


def delta(j: int, N: int) -> BitVector:
    if not 0 <= j < N:
        raise RangeError(f"index {j} outside [0, {N})")
    return BitVector.from_positions(N, [j])


def _log2_exact(N):
    ell = N.bit_length() - 1
    if N < 1 or (1 << ell) != N:
        raise DimensionError(f"length {N} is not a power of two")
    return ell


def t_perm(b: BitVector) -> np.ndarray:
    """Index array of T_b: output position ``i`` takes input ``i ^ B2I(b)``."""
    N = 1 << b.n
    return np.arange(N, dtype=np.int64) ^ b2i(b)


def t_apply(b: BitVector, x: BitVector) -> BitVector:
    """T_b on F_2^N: coordinate ``i`` moves to ``i XOR B2I(b)``."""
    if x.n != 1 << b.n:
        raise DimensionError(f"vector length {x.n} != 2^{b.n}")
    return x.permute(t_perm(b))


def t_prime_perm(b: BitVector) -> np.ndarray:
    swap = b.bits().astype(np.int64)
    base = np.arange(2 * b.n, dtype=np.int64)
    return base ^ np.repeat(swap, 2)


def t_prime_apply(b: BitVector, f: BitVector) -> BitVector:
    """T'_b on F_2^(2l): swap pair ``i`` exactly when ``b_i = 1``."""
    if f.n != 2 * b.n:
        raise DimensionError(f"vector length {f.n} != 2 * {b.n}")
    return f.permute(t_prime_perm(b))


def g_hat(G: BitMatrix, ell: int) -> BitMatrix:
    """Replace the last ``ell`` rows g of G by the row pairs (0, g).

    The result is (k + ell) x n and satisfies
    ``(u || i2b(j)) * G == (u || encode(j)) * g_hat(G)``.
    """
    if not 0 <= ell <= G.rows:
        raise RangeError(f"ell={ell} outside [0, {G.rows}]")
    if ell == 0:
        return G
    k = G.rows
    head = G.data[: k - ell]
    tail = np.zeros((2 * ell, G.data.shape[1]), dtype=np.uint64)
    tail[1::2] = G.data[k - ell :]
    return BitMatrix(k + ell, G.cols, np.vstack([head, tail]))
