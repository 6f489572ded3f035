"""Arithmetic in GF(2^d) and in GF(2^d)[x].

Field elements are plain ints in ``[0, 2^d)`` whose bits are the coefficients
of a polynomial over GF(2), reduced modulo a fixed irreducible polynomial
from :data:`MODULI`. Multiplication goes through exp/log tables built once
per degree.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import _backend
from ..errors import ModulusError, ParameterError, ZeroInversionError

# One irreducible trinomial or pentanomial per degree, as bitmasks.
MODULI = {
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10000011,  # x^7 + x + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
    9: (1 << 9) | (1 << 4) | 1,
    10: (1 << 10) | (1 << 3) | 1,
    11: (1 << 11) | (1 << 2) | 1,
    12: (1 << 12) | (1 << 3) | 1,
    13: (1 << 13) | (1 << 4) | (1 << 3) | (1 << 1) | 1,
    14: (1 << 14) | (1 << 5) | 1,
    15: (1 << 15) | (1 << 1) | 1,
    16: (1 << 16) | (1 << 12) | (1 << 3) | (1 << 1) | 1,
}


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials given as bitmasks."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_divmod(a: int, b: int):
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def gf2_is_irreducible(p: int) -> bool:
    """Brute-force irreducibility of a small binary polynomial."""
    deg = p.bit_length() - 1
    if deg < 1:
        return False
    for cand in range(2, 1 << (deg // 2 + 1)):
        if gf2_divmod(p, cand)[1] == 0 and cand != p:
            return False
    return True


class GF2m:
    """The field GF(2^d) with its reduction modulus and exp/log tables."""

    def __init__(self, d: int, modulus: int | None = None):
        if modulus is None:
            if d not in MODULI:
                raise ParameterError(f"no tabulated modulus for degree {d}")
            modulus = MODULI[d]
        if modulus.bit_length() - 1 != d:
            raise ModulusError("modulus degree does not match d")
        self.d = d
        self.q = 1 << d
        self.order = self.q - 1
        self.modulus = modulus
        self._build_tables()

    def _reduce(self, a):
        return gf2_divmod(a, self.modulus)[1]

    def _build_tables(self):
        q, order = self.q, self.order
        for gen in range(2, q) if q > 2 else [1]:
            exp = [1] * (2 * order)
            v = 1
            ok = True
            for i in range(1, order):
                v = self._reduce(clmul(v, gen))
                if v == 1:
                    ok = False
                    break
                exp[i] = v
            if ok:
                break
        else:  # pragma: no cover
            raise ModulusError("no primitive element found; modulus reducible?")
        self.generator = gen
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        log = [0] * q
        for i in range(order):
            log[exp[i]] = i
        self._exp = exp
        self._log = log
        self.exp = np.asarray(exp, dtype=np.int64)
        self.log = np.asarray(log, dtype=np.int64)

    # scalar ops on ints
    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroInversionError("zero has no inverse")
        return self._exp[(self.order - self._log[a]) % self.order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * e) % self.order]

    def sqrt(self, a):
        # Frobenius is a bijection; its inverse is a -> a^(2^(d-1))
        return self.pow(a, 1 << (self.d - 1))

    def element(self, v):
        return F2mElement(v, self)

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, GF2m) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"GF2m(d={self.d})"


@lru_cache(maxsize=None)
def field(d: int) -> GF2m:
    return GF2m(d)


class F2mElement:
    """A field element bound to its field."""

    __slots__ = ("value", "F")

    def __init__(self, value, F: GF2m):
        value = int(value)
        if not 0 <= value < F.q:
            raise ValueError(f"{value} is not an element of GF(2^{F.d})")
        self.value = value
        self.F = F

    def _check(self, other):
        if not isinstance(other, F2mElement) or other.F != self.F:
            raise ModulusError("elements belong to different fields")

    def __add__(self, other):
        self._check(other)
        return F2mElement(self.value ^ other.value, self.F)

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return F2mElement(self.F.mul(self.value, other.value), self.F)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return F2mElement(self.F.pow(self.value, e), self.F)

    def inverse(self):
        return F2mElement(f2m_inv(self.value, self.F), self.F)

    def sqrt(self):
        return F2mElement(self.F.sqrt(self.value), self.F)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other
        return isinstance(other, F2mElement) and self.F == other.F and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.F.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"F2mElement({self.value:#x}, d={self.F.d})"


def _val(a):
    return a.value if isinstance(a, F2mElement) else int(a)


def f2m_mul(a, b, F: GF2m):
    """Product computed from the defining modulus (no tables)."""
    return F._reduce(clmul(_val(a), _val(b)))


def f2m_inv(a, F: GF2m):
    """Inverse by extended Euclid over GF(2)[x]."""
    a = _val(a)
    if a == 0:
        raise ZeroInversionError("zero has no inverse")
    r0, r1 = F.modulus, a
    s0, s1 = 0, 1
    while r1 != 1:
        q, r = gf2_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ clmul(q, s1)
    return F._reduce(s1)


def f2m_pow(a, e: int, F: GF2m):
    a = _val(a)
    result, base = 1, a
    while e > 0:
        if e & 1:
            result = f2m_mul(result, base, F)
        base = f2m_mul(base, base, F)
        e >>= 1
    return result


# ---------------------------------------------------------------- polynomials

_EMPTY = np.zeros(0, dtype=np.int64)


def _trim(c):
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return _EMPTY
    return c[: nz[-1] + 1]


class F2mPoly:
    """Polynomial over GF(2^d), coefficients lowest degree first."""

    __slots__ = ("F", "c")

    def __init__(self, coeffs, F: GF2m):
        self.F = F
        c = np.asarray([_val(x) for x in coeffs] if not isinstance(coeffs, np.ndarray) else coeffs, dtype=np.int64)
        if c.size and (c.min() < 0 or c.max() >= F.q):
            raise ValueError("coefficient outside the field")
        self.c = np.ascontiguousarray(_trim(c))

    @classmethod
    def _raw(cls, c, F):
        p = cls.__new__(cls)
        p.F = F
        p.c = np.ascontiguousarray(_trim(c))
        return p

    @classmethod
    def zero(cls, F):
        return cls._raw(_EMPTY, F)

    @classmethod
    def one(cls, F):
        return cls._raw(np.ones(1, dtype=np.int64), F)

    @classmethod
    def x(cls, F):
        return cls._raw(np.array([0, 1], dtype=np.int64), F)

    @classmethod
    def monomial(cls, deg, F, coef=1):
        c = np.zeros(deg + 1, dtype=np.int64)
        c[deg] = coef
        return cls._raw(c, F)

    @classmethod
    def random_monic(cls, deg, F, rng):
        raw = rng.uint64s(deg).astype(np.int64) & (F.q - 1) if deg else _EMPTY
        return cls._raw(np.concatenate([raw, [1]]).astype(np.int64), F)

    @property
    def deg(self):
        return self.c.size - 1

    def is_zero(self):
        return self.c.size == 0

    def lead(self):
        return int(self.c[-1]) if self.c.size else 0

    def coeff(self, i):
        return int(self.c[i]) if 0 <= i < self.c.size else 0

    def coefficients(self):
        return [F2mElement(v, self.F) for v in self.c.tolist()]

    def is_monic(self):
        return self.lead() == 1

    def __add__(self, other):
        a, b = self.c, other.c
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[: b.size] ^= b
        return F2mPoly._raw(out, self.F)

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, F2mElement)):
            return self.scale(_val(other))
        return F2mPoly._raw(_backend.kernels.poly_mul(self.c, other.c, self.F.exp, self.F.log), self.F)

    def scale(self, a):
        if a == 0 or self.is_zero():
            return F2mPoly.zero(self.F)
        F = self.F
        out = np.zeros_like(self.c)
        nz = self.c != 0
        out[nz] = F.exp[F.log[a] + F.log[self.c[nz]]]
        return F2mPoly._raw(out, F)

    def square(self):
        F = self.F
        out = np.zeros(max(2 * self.c.size - 1, 0), dtype=np.int64)
        nz = self.c != 0
        sq = np.zeros_like(self.c)
        sq[nz] = F.exp[2 * F.log[self.c[nz]]]
        out[::2] = sq
        return F2mPoly._raw(out, F)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = _backend.kernels.poly_divmod(self.c, other.c, self.F.exp, self.F.log, self.F.order)
        return F2mPoly._raw(q, self.F), F2mPoly._raw(r, self.F)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __call__(self, a):
        return poly_eval(self, a)

    def eval_many(self, points):
        pts = np.ascontiguousarray(points, dtype=np.int64)
        return _backend.kernels.poly_eval_many(self.c, pts, self.F.exp, self.F.log)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.F.inv(self.lead()))

    def __eq__(self, other):
        return isinstance(other, F2mPoly) and self.F == other.F and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.F.modulus, self.c.tobytes()))

    def __repr__(self):
        return f"F2mPoly({self.c.tolist()}, d={self.F.d})"


def _check_modulus(g: F2mPoly):
    if g.deg < 1 or not g.is_monic():
        raise ModulusError("modulus must be monic of degree >= 1")


def poly_mulmod(p: F2mPoly, q: F2mPoly, g: F2mPoly) -> F2mPoly:
    _check_modulus(g)
    return (p * q) % g


def poly_eval(p: F2mPoly, a):
    F = p.F
    a = _val(a)
    acc = 0
    for c in p.c[::-1].tolist():
        acc = F.mul(acc, a) ^ c
    return acc


def poly_gcd_ext(p: F2mPoly, g: F2mPoly):
    """``(d, a, b)`` with ``a*p + b*g = d`` and ``d`` monic (or zero)."""
    F = p.F
    r0, r1 = p, g
    s0, s1 = F2mPoly.one(F), F2mPoly.zero(F)
    t0, t1 = F2mPoly.zero(F), F2mPoly.one(F)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 + q * s1
        t0, t1 = t1, t0 + q * t1
    if r0.is_zero():
        return r0, s0, t0
    u = F.inv(r0.lead())
    return r0.scale(u), s0.scale(u), t0.scale(u)


def poly_inv_mod(p: F2mPoly, g: F2mPoly) -> F2mPoly:
    _check_modulus(g)
    d, a, _ = poly_gcd_ext(p % g, g)
    if d.deg != 0:
        raise ZeroInversionError("polynomial is not invertible modulo g")
    return a % g


def poly_powmod(p: F2mPoly, e: int, g: F2mPoly) -> F2mPoly:
    _check_modulus(g)
    result = F2mPoly.one(p.F) % g
    base = p % g
    while e > 0:
        if e & 1:
            result = (result * base) % g
        base = base.square() % g
        e >>= 1
    return result


def poly_is_irreducible(g: F2mPoly) -> bool:
    """Ben-Or test: gcd(g, x^(q^i) - x mod g) = 1 for every i <= deg/2."""
    _check_modulus(g)
    F, t = g.F, g.deg
    if t == 1:
        return True
    x = F2mPoly.x(F)
    h = x % g
    for _ in range(1, t // 2 + 1):
        for _ in range(F.d):
            h = h.square() % g
        d, _, _ = poly_gcd_ext(g, h + x)
        if d.deg != 0:
            return False
    return True


@lru_cache(maxsize=64)
def _sqrt_x(g: F2mPoly) -> F2mPoly:
    # x^(2^(d*t - 1)) mod g is the square root of x in GF(2^d)[x]/(g)
    h = F2mPoly.x(g.F) % g
    for _ in range(g.F.d * g.deg - 1):
        h = h.square() % g
    return h


def poly_sqrt_mod(p: F2mPoly, g: F2mPoly) -> F2mPoly:
    """The unique ``h`` with ``h^2 = p (mod g)``; ``g`` must be irreducible."""
    _check_modulus(g)
    F = g.F
    p = p % g
    if p.is_zero():
        return p
    c = p.c
    half = 1 << (F.d - 1)

    def _root(coeffs):
        out = np.zeros_like(coeffs)
        nz = coeffs != 0
        out[nz] = F.exp[(F.log[coeffs[nz]] * half) % F.order]
        return F2mPoly._raw(out, F)

    even, odd = _root(c[0::2]), _root(c[1::2])
    return (even + _sqrt_x(g) * odd) % g
