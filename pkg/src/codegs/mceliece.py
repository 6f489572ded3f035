"""Randomized McEliece encryption: c = (u || m) * G + e with G = S * G' * P."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra.bits import BitMatrix, BitVector, inverse, mat_mul, random_invertible, vec_mat_mul
from .errors import DecodeFailure, DimensionError, FormatError, ParameterError
from .goppa import GoppaCode, generate_goppa

MAGIC = b"CGME1"


@dataclass(eq=False)
class MEPublicKey:
    G: BitMatrix
    n: int
    k: int
    t: int
    k1: int
    k2: int

    def to_bytes(self) -> bytes:
        hdr = b"".join(v.to_bytes(4, "big") for v in (self.n, self.k, self.t, self.k1, self.k2))
        return MAGIC + b"\x00" + hdr + self.G.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes, offset=0):
        n, k, t, k1, k2, pos = _parse_header(data, offset, 0)
        G, pos = BitMatrix.from_bytes(data, pos)
        if (G.rows, G.cols) != (k, n):
            raise FormatError("public matrix shape disagrees with header")
        return cls(G, n, k, t, k1, k2), pos

    def __eq__(self, other):
        return isinstance(other, MEPublicKey) and self.to_bytes() == other.to_bytes()


@dataclass(eq=False)
class MESecretKey:
    S: BitMatrix
    perm: np.ndarray
    code: GoppaCode
    k1: int
    k2: int
    S_inv: BitMatrix = None
    inv_perm: np.ndarray = None

    def __post_init__(self):
        self.perm = np.asarray(self.perm, dtype=np.int64)
        if self.S_inv is None:
            self.S_inv = inverse(self.S)
        if self.inv_perm is None:
            self.inv_perm = np.argsort(self.perm).astype(np.int64)

    @property
    def n(self):
        return self.code.n

    @property
    def k(self):
        return self.code.k

    @property
    def t(self):
        return self.code.t

    def public_matrix(self) -> BitMatrix:
        return mat_mul(self.S, self.code.Gmat).permute_columns(self.perm)

    def to_bytes(self) -> bytes:
        hdr = b"".join(v.to_bytes(4, "big") for v in (self.n, self.k, self.t, self.k1, self.k2))
        return (
            MAGIC + b"\x01" + hdr + self.S.to_bytes()
            + self.perm.astype(">u4").tobytes() + self.code.to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes, offset=0):
        n, k, t, k1, k2, pos = _parse_header(data, offset, 1)
        S, pos = BitMatrix.from_bytes(data, pos)
        perm = np.frombuffer(bytes(data[pos : pos + 4 * n]), dtype=">u4").astype(np.int64)
        pos += 4 * n
        if perm.size != n or not np.array_equal(np.sort(perm), np.arange(n)):
            raise FormatError("bad permutation in secret key")
        code, pos = GoppaCode.from_bytes(data, pos)
        if (S.rows, S.cols) != (k, k) or code.n != n or code.k != k or code.t != t:
            raise FormatError("secret key components disagree with header")
        return cls(S, perm, code, k1, k2), pos


def _parse_header(data, offset, kind):
    if bytes(data[offset : offset + 5]) != MAGIC:
        raise FormatError("not a McEliece key (bad magic)")
    if len(data) < offset + 26 or data[offset + 5] != kind:
        raise FormatError("wrong key kind or truncated header")
    vals = [int.from_bytes(data[offset + 6 + 4 * i : offset + 10 + 4 * i], "big") for i in range(5)]
    n, k, t, k1, k2 = vals
    if k1 + k2 != k:
        raise FormatError("k1 + k2 != k")
    return n, k, t, k1, k2, offset + 26


def me_keygen(n: int, k: int, t: int, k1: int, k2: int, rng):
    """Key pair for plaintexts of ``k2`` bits padded with ``k1`` random bits."""
    if t < 1 or (n - k) % t:
        raise ParameterError(f"(n - k) / t = ({n} - {k}) / {t} is not an integer")
    if k1 < 0 or k2 < 0 or k1 + k2 != k:
        raise ParameterError(f"k1 + k2 = {k1} + {k2} != k = {k}")
    d = (n - k) // t
    code = generate_goppa(d, n, t, rng)
    S = random_invertible(k, rng)
    perm = rng.permutation(n)
    sk = MESecretKey(S, perm, code, k1, k2)
    pk = MEPublicKey(sk.public_matrix(), n, k, t, k1, k2)
    return pk, sk


def me_encrypt_with(pk: MEPublicKey, msg: BitVector, u: BitVector, e: BitVector) -> BitVector:
    """Deterministic encryption with caller-chosen randomness ``(u, e)``."""
    if msg.n != pk.k2 or u.n != pk.k1 or e.n != pk.n:
        raise DimensionError("message, pad or error length does not match the key")
    return vec_mat_mul(u.concat(msg), pk.G) ^ e


def me_encrypt_full(pk: MEPublicKey, msg: BitVector, rng):
    """Encrypt and return ``(c, u, e)`` so the randomness can serve as a witness."""
    u = BitVector.random(pk.k1, rng)
    e = BitVector.random_weight(pk.n, pk.t, rng)
    return me_encrypt_with(pk, msg, u, e), u, e


def me_encrypt(pk: MEPublicKey, msg: BitVector, rng) -> BitVector:
    return me_encrypt_full(pk, msg, rng)[0]


def me_decrypt(sk: MESecretKey, c: BitVector):
    """Plaintext bits, or ``None`` when decoding fails."""
    if c.n != sk.n:
        raise DimensionError(f"ciphertext length {c.n} != {sk.n}")
    unpermuted = c.permute(sk.inv_perm)
    try:
        e = sk.code.decode(unpermuted)
    except DecodeFailure:
        return None
    codeword = (unpermuted ^ e).bits()
    mS = BitVector.from_bits(codeword[sk.code.info_set])
    plain = vec_mat_mul(mS, sk.S_inv)
    return plain.split(sk.k1)[1]
