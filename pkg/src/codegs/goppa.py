"""Binary irreducible Goppa codes and Patterson decoding."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra.bits import BitMatrix, BitVector, gauss, mat_vec_mul, nullspace
from .algebra.field import (
    MODULI,
    F2mPoly,
    GF2m,
    field,
    poly_inv_mod,
    poly_is_irreducible,
    poly_sqrt_mod,
)
from .errors import DecodeFailure, FormatError, ParameterError


def _vmul(F: GF2m, a, b):
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    a = np.broadcast_to(a, out.shape)
    b = np.broadcast_to(b, out.shape)
    nz = (a != 0) & (b != 0)
    out[nz] = F.exp[F.log[a[nz]] + F.log[b[nz]]]
    return out


def _vinv(F: GF2m, a):
    a = np.asarray(a, dtype=np.int64)
    if (a == 0).any():
        raise ZeroDivisionError("zero in vector inverse")
    return F.exp[(F.order - F.log[a]) % F.order]


def parity_columns(g: F2mPoly, L) -> np.ndarray:
    """Coefficients of ``(x - L_i)^-1 mod g`` for each support point, shape (t, n).

    Uses ``(g(x) - g(a)) / (x - a) * g(a)^-1`` with the division done by
    synthetic division, all support points at once.
    """
    F, t = g.F, g.deg
    L = np.asarray(L, dtype=np.int64)
    q = np.zeros((t, L.size), dtype=np.int64)
    q[t - 1] = g.coeff(t)
    for i in range(t - 1, 0, -1):
        q[i - 1] = g.coeff(i) ^ _vmul(F, L, q[i])
    ga_inv = _vinv(F, g.eval_many(L))
    return _vmul(F, q, ga_inv[None, :])


def binary_parity_check(g: F2mPoly, L) -> BitMatrix:
    """Expand each field entry into ``d`` rows, lowest bit first (row = i*d + bit)."""
    d = g.F.d
    C = parity_columns(g, L)
    t, n = C.shape
    bits = ((C[:, None, :] >> np.arange(d)[None, :, None]) & 1).reshape(t * d, n)
    return BitMatrix.from_array(bits)


@dataclass(eq=False)
class GoppaCode:
    d: int
    n: int
    t: int
    g: F2mPoly
    L: np.ndarray
    Gmat: BitMatrix
    Hbin: BitMatrix
    info_set: np.ndarray = dc_field(repr=False)

    @property
    def k(self):
        return self.n - self.d * self.t

    @property
    def F(self):
        return self.g.F

    def syndrome(self, v: BitVector) -> BitVector:
        return mat_vec_mul(self.Hbin, v)

    def syndrome_poly(self, v: BitVector) -> F2mPoly:
        s = self.syndrome(v).bits().reshape(self.t, self.d).astype(np.int64)
        coeffs = (s << np.arange(self.d)).sum(axis=1)
        return F2mPoly._raw(coeffs, self.F)

    def is_codeword(self, v: BitVector) -> bool:
        return self.syndrome(v).is_zero()

    def decode(self, received: BitVector) -> BitVector:
        return patterson_decode(self, received)

    def to_bytes(self) -> bytes:
        out = [self.d.to_bytes(2, "big"), self.n.to_bytes(2, "big"), self.t.to_bytes(2, "big")]
        out.append(b"".join(int(self.g.coeff(i)).to_bytes(2, "big") for i in range(self.t + 1)))
        out.append(np.asarray(self.L, dtype=">u2").tobytes())
        out.append(self.Gmat.to_bytes())
        out.append(self.Hbin.to_bytes())
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes, offset=0):
        try:
            d, n, t = (int.from_bytes(data[offset + 2 * i : offset + 2 * i + 2], "big") for i in range(3))
            pos = offset + 6
            if d not in MODULI or not (1 <= t and n <= (1 << d)):
                raise FormatError("bad Goppa header")
            F = field(d)
            coeffs = np.frombuffer(bytes(data[pos : pos + 2 * (t + 1)]), dtype=">u2").astype(np.int64)
            pos += 2 * (t + 1)
            L = np.frombuffer(bytes(data[pos : pos + 2 * n]), dtype=">u2").astype(np.int64)
            pos += 2 * n
            if coeffs.size != t + 1 or L.size != n or coeffs.max(initial=0) >= F.q or L.max(initial=0) >= F.q:
                raise FormatError("truncated or out-of-range Goppa data")
            Gmat, pos = BitMatrix.from_bytes(data, pos)
            Hbin, pos = BitMatrix.from_bytes(data, pos)
        except (ValueError, IndexError) as exc:
            raise FormatError(f"bad Goppa code encoding: {exc}") from exc
        g = F2mPoly._raw(coeffs, F)
        _, _, piv = gauss(Hbin)
        info = np.setdiff1d(np.arange(n), np.asarray(piv, dtype=np.int64))
        code = cls(d, n, t, g, L, Gmat, Hbin, info)
        return code, pos


def generate_goppa(d: int, n: int, t: int, rng) -> GoppaCode:
    """Random code with an irreducible degree-``t`` Goppa polynomial over GF(2^d)."""
    if d not in MODULI:
        raise ParameterError(f"unsupported extension degree {d}")
    if n > (1 << d):
        raise ParameterError(f"n={n} exceeds field size 2^{d}")
    if t < 1 or n - d * t < 1:
        raise ParameterError(f"n - d*t = {n - d * t} must be at least 1")
    F = field(d)
    while True:
        g = F2mPoly.random_monic(t, F, rng)
        while not poly_is_irreducible(g):
            g = F2mPoly.random_monic(t, F, rng)
        order = rng.permutation(F.q)
        vals = g.eval_many(order)
        L = order[vals != 0][:n]
        if L.size < n:
            continue
        H = binary_parity_check(g, L)
        rank, _, piv = gauss(H)
        if rank < d * t:
            continue  # rare: keep k = n - d*t exact
        Gmat = nullspace(H)
        info = np.setdiff1d(np.arange(n), np.asarray(piv, dtype=np.int64))
        return GoppaCode(d, n, t, g, L.copy(), Gmat, H, info)


def patterson_decode(code: GoppaCode, received: BitVector) -> BitVector:
    """Error vector ``e`` of weight <= t with ``received + e`` a codeword."""
    if received.n != code.n:
        raise DecodeFailure(f"received length {received.n} != {code.n}")
    F, g, t = code.F, code.g, code.t
    S = code.syndrome_poly(received)
    if S.is_zero():
        return BitVector(code.n)
    x = F2mPoly.x(F)
    T = poly_inv_mod(S, g)
    tx = T + x
    if tx.is_zero():
        sigma = x
    else:
        R = poly_sqrt_mod(tx, g)
        # partial Euclid on (g, R): stop once deg r <= t/2, b tracks R's cofactor
        r0, r1 = g, R
        b0, b1 = F2mPoly.zero(F), F2mPoly.one(F)
        while r1.deg > t // 2:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            b0, b1 = b1, b0 + q * b1
        a, b = r1, b1
        sigma = a.square() + x * b.square()
    if sigma.deg < 1 or sigma.deg > t:
        raise DecodeFailure("locator degree out of range")
    roots = np.flatnonzero(sigma.eval_many(code.L) == 0)
    if roots.size != sigma.deg:
        raise DecodeFailure(f"locator has {roots.size} roots in the support, degree {sigma.deg}")
    e = BitVector.from_positions(code.n, roots)
    if code.syndrome(e) != code.syndrome(received):
        raise DecodeFailure("recovered error does not reproduce the syndrome")
    return e
