"""SHA-3 based commitment and challenge derivation."""

import hashlib

import numpy as np

from .algebra.bits import BitVector

COM_TAG = b"codegs/com/v1"
CHALLENGE_TAG = b"codegs/fs-challenge/v1"


def digest_bytes(lam: int) -> int:
    """Commitment and rho length in bytes: lambda bits, floored at 64 bits."""
    return (max(lam, 64) + 7) // 8


def serialize_perm(perm) -> bytes:
    arr = np.asarray(perm)
    if arr.size and arr.max() > 0xFFFF:
        raise ValueError("permutation too long for 2-byte entries")
    return arr.astype(">u2").tobytes()


def _item_bytes(item) -> bytes:
    if isinstance(item, BitVector):
        return item.to_bytes()
    if isinstance(item, (bytes, bytearray)):
        return bytes(item)
    return serialize_perm(item)


def com(items, rho: bytes, nbytes: int) -> bytes:
    """COM(x_1..x_k; rho): SHA3-256 over a length-framed encoding, truncated."""
    h = hashlib.sha3_256()
    h.update(COM_TAG)
    h.update(len(items).to_bytes(2, "big"))
    for it in items:
        raw = _item_bytes(it)
        h.update(len(raw).to_bytes(4, "big"))
        h.update(raw)
    h.update(rho)
    return h.digest()[:nbytes]


_SYMBOLS = (1, 2, 3)


def hash_to_ternary(data: bytes, kappa: int):
    """Map ``data`` to ``kappa`` symbols in {1, 2, 3}.

    Bit pairs of a SHAKE-256 stream, least significant pair of each byte
    first: 00 -> 1, 01 -> 2, 10 -> 3, 11 -> rejected.
    """
    if kappa < 1:
        raise ValueError("kappa must be positive")
    x = hashlib.shake_256(CHALLENGE_TAG + data)
    want = kappa
    while True:
        stream = x.digest(want)
        out = []
        for byte in stream:
            for p in range(4):
                v = (byte >> (2 * p)) & 3
                if v != 3:
                    out.append(_SYMBOLS[v])
                    if len(out) == kappa:
                        return out
        want *= 2
