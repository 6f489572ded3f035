"""Stern-type three-move arguments for the group-signature relation.

One code path serves both schemes: a statement carries one ciphertext (CPA
scheme) or two ciphertexts under independent keys that must hide the same
index (CCA scheme). Per-ciphertext objects (sigma, r_u, r_e, z_u, z_e, ...)
are tuples of matching length; b, pi, r_s, r_x, r_f are shared.

Permutations act on vectors by ``pi(v)_i = v_{pi[i]}``.

All first-move randomness comes from a 32-byte round seed::

    round_seed -> open_seed, rho3
    open_seed  -> pad_perm_seed, mask_seed
    pad_perm_seed -> b, pi, sigma_i, rho1
    mask_seed     -> r_s, r_x, r_u_i, r_f, r_e_i, rho2

so a challenge-2 answer can ship ``pad_perm_seed`` in place of (b, pi,
sigma, rho1) and a challenge-3 answer can ship ``open_seed`` alone, without
either revealing a rho the verifier must not see.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra.bits import AffineSolver, BitMatrix, BitVector, mat_vec_mul, vec_mat_mul
from .errors import DecompressError, DimensionError, ExtractError, FormatError, WitnessRelationError
from .hashing import com, digest_bytes, serialize_perm
from .indexcode import b2i, delta, encode, i2b, t_perm, t_prime_perm
from .rng import Rng

SEED_BYTES = 32


# ---------------------------------------------------------------- statement


@dataclass(eq=False)
class Statement:
    """Public input: H, A = [y_0^T | ... | y_{N-1}^T], the G-hat matrices and ciphertexts."""

    H: BitMatrix
    A: BitMatrix
    ghats: tuple
    cts: tuple
    omega: int
    t: int
    ell: int
    lam: int

    def __post_init__(self):
        self.ghats = tuple(self.ghats)
        self.cts = tuple(self.cts)
        if len(self.ghats) not in (1, 2) or len(self.ghats) != len(self.cts):
            raise DimensionError("need one or two (G-hat, ciphertext) pairs")
        if self.A.rows != self.H.rows:
            raise DimensionError("H and A must have the same number of rows")
        if self.A.cols != 1 << self.ell:
            raise DimensionError(f"A has {self.A.cols} columns, expected 2^{self.ell}")
        g0 = self.ghats[0]
        for g, c in zip(self.ghats, self.cts):
            if (g.rows, g.cols) != (g0.rows, g0.cols) or c.n != g0.cols:
                raise DimensionError("G-hat / ciphertext shapes disagree")
        if g0.rows < 2 * self.ell:
            raise DimensionError("G-hat has fewer than 2*ell rows")

    @property
    def nct(self):
        return len(self.cts)

    @property
    def m(self):
        return self.H.cols

    @property
    def r(self):
        return self.H.rows

    @property
    def N(self):
        return self.A.cols

    @property
    def n(self):
        return self.ghats[0].cols

    @property
    def ku(self):
        """Length of the random pad u (k - ell)."""
        return self.ghats[0].rows - 2 * self.ell

    @property
    def k(self):
        return self.ku + self.ell

    @property
    def rho_bytes(self):
        return digest_bytes(self.lam)

    def to_bytes(self) -> bytes:
        head = b"".join(v.to_bytes(4, "big") for v in (self.nct, self.omega, self.t, self.ell, self.lam))
        parts = [head, self.H.to_bytes(), self.A.to_bytes()]
        parts += [g.to_bytes() for g in self.ghats]
        parts += [c.to_bytes() for c in self.cts]
        return b"".join(parts)


@dataclass(eq=False)
class Witness:
    j: int
    s: BitVector
    us: tuple
    es: tuple

    def __post_init__(self):
        self.us = tuple(self.us)
        self.es = tuple(self.es)

    def __eq__(self, other):
        return (
            isinstance(other, Witness)
            and self.j == other.j
            and self.s == other.s
            and self.us == other.us
            and self.es == other.es
        )


def witness_holds(stmt: Statement, w: Witness) -> bool:
    """The signing relation: H s^T = y_j^T, |s| = omega, (u||Encode(j)) G-hat + e = c, |e| = t."""
    try:
        if not 0 <= w.j < stmt.N or w.s.n != stmt.m or w.s.weight() != stmt.omega:
            return False
        if len(w.us) != stmt.nct or len(w.es) != stmt.nct:
            return False
        if mat_vec_mul(stmt.H, w.s) != mat_vec_mul(stmt.A, delta(w.j, stmt.N)):
            return False
        f = encode(w.j, stmt.ell)
        for u, e, G, c in zip(w.us, w.es, stmt.ghats, stmt.cts):
            if u.n != stmt.ku or e.n != stmt.n or e.weight() != stmt.t:
                return False
            if vec_mat_mul(u.concat(f), G) ^ e != c:
                return False
        return True
    except (DimensionError, ValueError):
        return False


# ---------------------------------------------------------------- seed tree


def _split_round_seed(seed, rb):
    return Rng(seed, "open").bytes(SEED_BYTES), Rng(seed, "rho3").bytes(rb)


def _split_open_seed(seed):
    return Rng(seed, "pad-perm").bytes(SEED_BYTES), Rng(seed, "mask").bytes(SEED_BYTES)


def _expand_pad_perm(stmt: Statement, seed):
    root = Rng(seed, "pad-perm-values")
    b = BitVector.random(stmt.ell, root.child("pad"))
    pi = root.child("perm-m").permutation(stmt.m)
    sigmas = tuple(root.child(f"perm-n/{i}").permutation(stmt.n) for i in range(stmt.nct))
    rho1 = root.child("rho1").bytes(stmt.rho_bytes)
    return b, pi, sigmas, rho1


def _expand_masks(stmt: Statement, seed):
    root = Rng(seed, "mask-values")
    r_s = BitVector.random(stmt.m, root.child("mask-s"))
    r_x = BitVector.random(stmt.N, root.child("mask-x"))
    r_us = tuple(BitVector.random(stmt.ku, root.child(f"mask-u/{i}")) for i in range(stmt.nct))
    r_f = BitVector.random(2 * stmt.ell, root.child("mask-f"))
    r_es = tuple(BitVector.random(stmt.n, root.child(f"mask-e/{i}")) for i in range(stmt.nct))
    rho2 = root.child("rho2").bytes(stmt.rho_bytes)
    return r_s, r_x, r_us, r_f, r_es, rho2


# ---------------------------------------------------------------- commitment pieces


def _syn(stmt, s_like, x_like):
    return mat_vec_mul(stmt.H, s_like) ^ mat_vec_mul(stmt.A, x_like)


def _code_terms(stmt, us, f, es, add_ct):
    out = []
    for u, e, G, c in zip(us, es, stmt.ghats, stmt.cts):
        v = vec_mat_mul(u.concat(f), G) ^ e
        out.append(v ^ c if add_ct else v)
    return out


def _c1(stmt, b, pi, sigmas, s_like, x_like, us, f, es, rho1, add_ct):
    items = [b, pi, *sigmas, _syn(stmt, s_like, x_like), *_code_terms(stmt, us, f, es, add_ct)]
    return com(items, rho1, stmt.rho_bytes)


def _masked_items(b, pi, sigmas, s_like, x_like, f_like, es_like):
    return [
        s_like.permute(pi),
        x_like.permute(t_perm(b)),
        f_like.permute(t_prime_perm(b)),
        *(e.permute(sg) for e, sg in zip(es_like, sigmas)),
    ]


def _c23(stmt, b, pi, sigmas, s_like, x_like, f_like, es_like, rho):
    return com(_masked_items(b, pi, sigmas, s_like, x_like, f_like, es_like), rho, stmt.rho_bytes)


# ---------------------------------------------------------------- responses


def _vec_body(v: BitVector) -> bytes:
    return v.packed()


class _Reader:
    def __init__(self, data):
        self.data = bytes(data)
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise FormatError("truncated response body")
        out = self.data[self.pos : self.pos + n]
        self.pos += n
        return out

    def vec(self, nbits):
        return BitVector.from_packed(self.take((nbits + 7) // 8), nbits)

    def perm(self, n):
        arr = np.frombuffer(self.take(2 * n), dtype=">u2").astype(np.int64)
        if not np.array_equal(np.sort(arr), np.arange(n)):
            raise FormatError("not a permutation")
        return arr

    def done(self):
        if self.pos != len(self.data):
            raise FormatError("trailing bytes in response body")


class _Rsp:
    ch = 0

    def body(self) -> bytes:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.body() == other.body()

    def __hash__(self):
        return hash((self.ch, self.body()))


@dataclass(eq=False)
class Rsp1(_Rsp):
    b1: BitVector
    v_s: BitVector
    w_s: BitVector
    v_x: BitVector
    v_f: BitVector
    v_e: tuple
    w_e: tuple
    rho2: bytes
    rho3: bytes
    ch = 1

    def body(self):
        parts = [self.b1, self.v_s, self.w_s, self.v_x, self.v_f]
        for ve, we in zip(self.v_e, self.w_e):
            parts += [ve, we]
        return b"".join(_vec_body(p) for p in parts) + self.rho2 + self.rho3

    @classmethod
    def parse(cls, stmt, data):
        r = _Reader(data)
        b1, v_s, w_s, v_x, v_f = r.vec(stmt.ell), r.vec(stmt.m), r.vec(stmt.m), r.vec(stmt.N), r.vec(2 * stmt.ell)
        v_e, w_e = [], []
        for _ in range(stmt.nct):
            v_e.append(r.vec(stmt.n))
            w_e.append(r.vec(stmt.n))
        rho2, rho3 = r.take(stmt.rho_bytes), r.take(stmt.rho_bytes)
        r.done()
        return cls(b1, v_s, w_s, v_x, v_f, tuple(v_e), tuple(w_e), rho2, rho3)


@dataclass(eq=False)
class _Opening(_Rsp):
    """Shared shape of the challenge-2 and challenge-3 answers."""

    b: BitVector
    pi: np.ndarray
    sigmas: tuple
    vs: BitVector
    vx: BitVector
    vu: tuple
    vf: BitVector
    ve: tuple
    rho_a: bytes
    rho_b: bytes

    def body(self):
        out = [_vec_body(self.b), serialize_perm(self.pi)]
        out += [serialize_perm(sg) for sg in self.sigmas]
        out += [_vec_body(self.vs), _vec_body(self.vx)]
        out += [_vec_body(u) for u in self.vu]
        out.append(_vec_body(self.vf))
        out += [_vec_body(e) for e in self.ve]
        return b"".join(out) + self.rho_a + self.rho_b

    @classmethod
    def parse(cls, stmt, data):
        r = _Reader(data)
        b = r.vec(stmt.ell)
        pi = r.perm(stmt.m)
        sigmas = tuple(r.perm(stmt.n) for _ in range(stmt.nct))
        vs, vx = r.vec(stmt.m), r.vec(stmt.N)
        vu = tuple(r.vec(stmt.ku) for _ in range(stmt.nct))
        vf = r.vec(2 * stmt.ell)
        ve = tuple(r.vec(stmt.n) for _ in range(stmt.nct))
        ra, rb = r.take(stmt.rho_bytes), r.take(stmt.rho_bytes)
        r.done()
        return cls(b, pi, sigmas, vs, vx, vu, vf, ve, ra, rb)


class Rsp2(_Opening):
    """(b, pi, sigma, z_s, z_x, z_u, z_f, z_e; rho1, rho3) with z = witness + mask."""

    ch = 2

    @property
    def rho1(self):
        return self.rho_a

    @property
    def rho3(self):
        return self.rho_b


class Rsp3(_Opening):
    """(b, pi, sigma, y_s, y_x, y_u, y_f, y_e; rho1, rho2) with y = mask."""

    ch = 3

    @property
    def rho1(self):
        return self.rho_a

    @property
    def rho2(self):
        return self.rho_b


RSP_TYPES = {1: Rsp1, 2: Rsp2, 3: Rsp3}


# compact forms used inside signatures


@dataclass(eq=False)
class Compact2(_Rsp):
    pad_perm_seed: bytes
    z_s: BitVector
    z_x: BitVector
    z_u: tuple
    z_f: BitVector
    z_e: tuple
    rho3: bytes
    ch = 2

    def body(self):
        parts = [self.z_s, self.z_x, *self.z_u, self.z_f, *self.z_e]
        return self.pad_perm_seed + b"".join(_vec_body(p) for p in parts) + self.rho3

    @classmethod
    def parse(cls, stmt, data):
        r = _Reader(data)
        seed = r.take(SEED_BYTES)
        z_s, z_x = r.vec(stmt.m), r.vec(stmt.N)
        z_u = tuple(r.vec(stmt.ku) for _ in range(stmt.nct))
        z_f = r.vec(2 * stmt.ell)
        z_e = tuple(r.vec(stmt.n) for _ in range(stmt.nct))
        rho3 = r.take(stmt.rho_bytes)
        r.done()
        return cls(seed, z_s, z_x, z_u, z_f, z_e, rho3)


@dataclass(eq=False)
class Compact3(_Rsp):
    open_seed: bytes
    ch = 3

    def body(self):
        return self.open_seed

    @classmethod
    def parse(cls, stmt, data):
        if len(data) != SEED_BYTES:
            raise DecompressError(f"challenge-3 seed must be {SEED_BYTES} bytes, got {len(data)}")
        return cls(bytes(data))


COMPACT_TYPES = {1: Rsp1, 2: Compact2, 3: Compact3}


# ---------------------------------------------------------------- prover


@dataclass(eq=False)
class ProverState:
    stmt: Statement
    j: int
    s: BitVector
    x: BitVector
    us: tuple
    f: BitVector
    es: tuple
    round_seed: bytes
    open_seed: bytes
    pad_perm_seed: bytes
    b: BitVector
    pi: np.ndarray
    sigmas: tuple
    rho1: bytes
    rho2: bytes
    rho3: bytes
    r_s: BitVector
    r_x: BitVector
    r_us: tuple
    r_f: BitVector
    r_es: tuple
    cmt: tuple = None


def _prepare(stmt, j, s, x, us, f, es, round_seed, shift_c1=False):
    rb = stmt.rho_bytes
    open_seed, rho3 = _split_round_seed(round_seed, rb)
    pp_seed, mask_seed = _split_open_seed(open_seed)
    b, pi, sigmas, rho1 = _expand_pad_perm(stmt, pp_seed)
    r_s, r_x, r_us, r_f, r_es, rho2 = _expand_masks(stmt, mask_seed)
    st = ProverState(
        stmt, j, s, x, tuple(us), f, tuple(es), bytes(round_seed), open_seed, pp_seed,
        b, pi, sigmas, rho1, rho2, rho3, r_s, r_x, r_us, r_f, r_es,
    )
    z_s, z_x, z_f = s ^ r_s, x ^ r_x, f ^ r_f
    z_us = tuple(u ^ r for u, r in zip(st.us, r_us))
    z_es = tuple(e ^ r for e, r in zip(st.es, r_es))
    if shift_c1:
        c1 = _c1(stmt, b, pi, sigmas, z_s, z_x, z_us, z_f, z_es, rho1, add_ct=True)
    else:
        c1 = _c1(stmt, b, pi, sigmas, r_s, r_x, r_us, r_f, r_es, rho1, add_ct=False)
    c2 = _c23(stmt, b, pi, sigmas, r_s, r_x, r_f, r_es, rho2)
    c3 = _c23(stmt, b, pi, sigmas, z_s, z_x, z_f, z_es, rho3)
    st.cmt = (c1, c2, c3)
    return st.cmt, st


def commit(stmt: Statement, w: Witness, round_seed: bytes):
    """First move. Returns ``(cmt, state)`` with cmt = (c1, c2, c3)."""
    if len(round_seed) != SEED_BYTES:
        raise ValueError(f"round seed must be {SEED_BYTES} bytes")
    if not witness_holds(stmt, w):
        raise WitnessRelationError("witness does not satisfy the relation for this statement")
    return _prepare(
        stmt, w.j, w.s, delta(w.j, stmt.N), w.us, encode(w.j, stmt.ell), w.es, round_seed
    )


def respond(state: ProverState, ch: int):
    """Third move, uncompressed."""
    st = state
    if ch == 1:
        b1 = (i2b(st.j, st.stmt.ell) if st.j is not None else BitVector(st.stmt.ell)) ^ st.b
        return Rsp1(
            b1,
            st.r_s.permute(st.pi),
            st.s.permute(st.pi),
            st.r_x.permute(t_perm(st.b)),
            st.r_f.permute(t_prime_perm(st.b)),
            tuple(r.permute(sg) for r, sg in zip(st.r_es, st.sigmas)),
            tuple(e.permute(sg) for e, sg in zip(st.es, st.sigmas)),
            st.rho2,
            st.rho3,
        )
    if ch == 2:
        return Rsp2(
            st.b, st.pi, st.sigmas,
            st.s ^ st.r_s, st.x ^ st.r_x,
            tuple(u ^ r for u, r in zip(st.us, st.r_us)),
            st.f ^ st.r_f,
            tuple(e ^ r for e, r in zip(st.es, st.r_es)),
            st.rho1, st.rho3,
        )
    if ch == 3:
        return Rsp3(st.b, st.pi, st.sigmas, st.r_s, st.r_x, st.r_us, st.r_f, st.r_es, st.rho1, st.rho2)
    raise ValueError(f"challenge must be 1, 2 or 3, got {ch}")


def compress_rsp(state: ProverState, ch: int):
    """Seed-compressed answer: explicit for 1, pad/perm seed + z for 2, one seed for 3."""
    if ch == 1:
        return respond(state, 1)
    if ch == 2:
        full = respond(state, 2)
        return Compact2(state.pad_perm_seed, full.vs, full.vx, full.vu, full.vf, full.ve, state.rho3)
    if ch == 3:
        return Compact3(state.open_seed)
    raise ValueError(f"challenge must be 1, 2 or 3, got {ch}")


def decompress_rsp(compact, ch: int, stmt: Statement):
    """Rebuild the full response the compact form stands for."""
    if ch == 1:
        if not isinstance(compact, Rsp1):
            raise DecompressError("challenge 1 expects an explicit response")
        return compact
    if ch == 2:
        if not isinstance(compact, Compact2) or len(compact.pad_perm_seed) != SEED_BYTES:
            raise DecompressError("malformed challenge-2 compact response")
        b, pi, sigmas, rho1 = _expand_pad_perm(stmt, compact.pad_perm_seed)
        return Rsp2(b, pi, sigmas, compact.z_s, compact.z_x, compact.z_u, compact.z_f, compact.z_e, rho1, compact.rho3)
    if ch == 3:
        if not isinstance(compact, Compact3) or len(compact.open_seed) != SEED_BYTES:
            raise DecompressError("malformed challenge-3 compact response")
        pp_seed, mask_seed = _split_open_seed(compact.open_seed)
        b, pi, sigmas, rho1 = _expand_pad_perm(stmt, pp_seed)
        r_s, r_x, r_us, r_f, r_es, rho2 = _expand_masks(stmt, mask_seed)
        return Rsp3(b, pi, sigmas, r_s, r_x, r_us, r_f, r_es, rho1, rho2)
    raise DecompressError(f"challenge must be 1, 2 or 3, got {ch}")


# ---------------------------------------------------------------- verifier


def _is_perm(p, n):
    p = np.asarray(p)
    return p.shape == (n,) and np.array_equal(np.sort(p), np.arange(n))


def _shape_ok(stmt, rsp):
    nct = stmt.nct
    if isinstance(rsp, Rsp1):
        lens = [(rsp.b1, stmt.ell), (rsp.v_s, stmt.m), (rsp.w_s, stmt.m), (rsp.v_x, stmt.N), (rsp.v_f, 2 * stmt.ell)]
        if len(rsp.v_e) != nct or len(rsp.w_e) != nct:
            return False
        lens += [(v, stmt.n) for v in rsp.v_e] + [(v, stmt.n) for v in rsp.w_e]
        rhos = (rsp.rho2, rsp.rho3)
    else:
        if len(rsp.sigmas) != nct or len(rsp.vu) != nct or len(rsp.ve) != nct:
            return False
        if not _is_perm(rsp.pi, stmt.m) or not all(_is_perm(sg, stmt.n) for sg in rsp.sigmas):
            return False
        lens = [(rsp.b, stmt.ell), (rsp.vs, stmt.m), (rsp.vx, stmt.N), (rsp.vf, 2 * stmt.ell)]
        lens += [(u, stmt.ku) for u in rsp.vu] + [(e, stmt.n) for e in rsp.ve]
        rhos = (rsp.rho_a, rsp.rho_b)
    if any(not isinstance(v, BitVector) or v.n != n for v, n in lens):
        return False
    return all(isinstance(r, (bytes, bytearray)) and len(r) == stmt.rho_bytes for r in rhos)


def _verify(stmt, cmt, ch, rsp):
    c1, c2, c3 = cmt
    if rsp.ch != ch or not isinstance(rsp, RSP_TYPES[ch]) or not _shape_ok(stmt, rsp):
        return False
    if ch == 1:
        if rsp.w_s.weight() != stmt.omega or any(w.weight() != stmt.t for w in rsp.w_e):
            return False
        j1 = b2i(rsp.b1)
        w_x, w_f = delta(j1, stmt.N), encode(j1, stmt.ell)
        items2 = [rsp.v_s, rsp.v_x, rsp.v_f, *rsp.v_e]
        if com(items2, rsp.rho2, stmt.rho_bytes) != c2:
            return False
        items3 = [rsp.v_s ^ rsp.w_s, rsp.v_x ^ w_x, rsp.v_f ^ w_f, *(v ^ w for v, w in zip(rsp.v_e, rsp.w_e))]
        return com(items3, rsp.rho3, stmt.rho_bytes) == c3
    # challenges 2 and 3 share the c1 recomputation; only the ciphertext term differs
    add_ct = ch == 2
    if _c1(stmt, rsp.b, rsp.pi, rsp.sigmas, rsp.vs, rsp.vx, rsp.vu, rsp.vf, rsp.ve, rsp.rho_a, add_ct) != c1:
        return False
    other = c3 if ch == 2 else c2
    return _c23(stmt, rsp.b, rsp.pi, rsp.sigmas, rsp.vs, rsp.vx, rsp.vf, rsp.ve, rsp.rho_b) == other


def verify_round(stmt: Statement, cmt, ch: int, rsp) -> bool:
    """Accept or reject one round; malformed input is a rejection, never an exception."""
    try:
        if ch not in (1, 2, 3) or rsp is None or len(cmt) != 3:
            return False
        if any(not isinstance(c, (bytes, bytearray)) or len(c) != stmt.rho_bytes for c in cmt):
            return False
        return bool(_verify(stmt, cmt, ch, rsp))
    except Exception:  # adversarial input must never escape as an exception
        return False


# ---------------------------------------------------------------- simulator


@dataclass(eq=False)
class SimState:
    predicted_absent: int
    prover: ProverState


_kernel_cache: dict = {}


def _kernel_solver(stmt: Statement) -> AffineSolver:
    key = id(stmt)
    hit = _kernel_cache.get(key)
    if hit is not None and hit[0] is stmt:
        return hit[1]
    solver = AffineSolver(stmt.H.hstack(stmt.A))
    if len(_kernel_cache) > 8:
        _kernel_cache.clear()
    _kernel_cache[key] = (stmt, solver)
    return solver


def simulate_commit(stmt: Statement, predicted_absent: int, rng):
    """Witnessless first move that can answer every challenge except ``predicted_absent``."""
    if predicted_absent not in (1, 2, 3):
        raise ValueError("predicted challenge must be 1, 2 or 3")
    round_seed = rng.bytes(SEED_BYTES)
    if predicted_absent == 1:
        # any (s', x') in the kernel of [H | A] and (u', f', e') explaining each c
        z = _kernel_solver(stmt).solve(BitVector(stmt.r), rng)
        s, x = z.split(stmt.m)
        f = BitVector.random(2 * stmt.ell, rng)
        us = tuple(BitVector.random(stmt.ku, rng) for _ in range(stmt.nct))
        es = tuple(vec_mat_mul(u.concat(f), G) ^ c for u, G, c in zip(us, stmt.ghats, stmt.cts))
        cmt, st = _prepare(stmt, None, s, x, us, f, es, round_seed)
    else:
        j = rng.below(stmt.N)
        s = BitVector.random_weight(stmt.m, stmt.omega, rng)
        es = tuple(BitVector.random_weight(stmt.n, stmt.t, rng) for _ in range(stmt.nct))
        us = tuple(BitVector.random(stmt.ku, rng) for _ in range(stmt.nct))
        cmt, st = _prepare(
            stmt, j, s, delta(j, stmt.N), us, encode(j, stmt.ell), es, round_seed,
            shift_c1=predicted_absent == 3,
        )
    return cmt, SimState(predicted_absent, st)


def simulate_respond(sim: SimState, ch: int, forced=False):
    """Answer ``ch``; ``None`` (abort) on the predicted-absent challenge.

    With ``forced=True`` the simulator answers anyway, the way a cheating
    prover holding only the fake witness would; that answer fails verification.
    """
    if ch == sim.predicted_absent and not forced:
        return None
    return respond(sim.prover, ch)


def simulate_compact(sim: SimState, ch: int, forced=False):
    if ch == sim.predicted_absent and not forced:
        return None
    return compress_rsp(sim.prover, ch)


def simulate_round(stmt: Statement, predicted_absent: int, actual_ch: int, rng):
    """``(cmt, ch, rsp)`` or ``None`` when the prediction was wrong (abort)."""
    cmt, sim = simulate_commit(stmt, predicted_absent, rng)
    rsp = simulate_respond(sim, actual_ch)
    if rsp is None:
        return None
    return cmt, actual_ch, rsp


# ---------------------------------------------------------------- extractor


def extract_witness(stmt: Statement, cmt, rsp1, rsp2, rsp3) -> Witness:
    """Witness from valid answers to all three challenges on one commitment."""
    for ch, rsp in ((1, rsp1), (2, rsp2), (3, rsp3)):
        if not verify_round(stmt, cmt, ch, rsp):
            raise ExtractError(f"response to challenge {ch} does not verify")
    j = b2i(rsp1.b1 ^ rsp2.b)
    s = rsp2.vs ^ rsp3.vs
    f = rsp2.vf ^ rsp3.vf
    us = tuple(a ^ b for a, b in zip(rsp2.vu, rsp3.vu))
    es = tuple(a ^ b for a, b in zip(rsp2.ve, rsp3.ve))
    if f != encode(j, stmt.ell):
        raise ExtractError("extracted f is not Encode(j)")
    w = Witness(j, s, us, es)
    if not witness_holds(stmt, w):
        raise ExtractError("extracted tuple violates the relation (commitment collision?)")
    return w


# CCA-scheme names: same code, two ciphertexts


def _need_two(stmt):
    if stmt.nct != 2:
        raise DimensionError("CCA protocol needs a statement with two ciphertexts")


def commit_cca(stmt, w, round_seed):
    _need_two(stmt)
    return commit(stmt, w, round_seed)


def respond_cca(state, ch):
    _need_two(state.stmt)
    return respond(state, ch)


def verify_round_cca(stmt, cmt, ch, rsp):
    return stmt.nct == 2 and verify_round(stmt, cmt, ch, rsp)


def simulate_round_cca(stmt, predicted_absent, actual_ch, rng):
    _need_two(stmt)
    return simulate_round(stmt, predicted_absent, actual_ch, rng)


def extract_witness_cca(stmt, cmt, rsp1, rsp2, rsp3):
    _need_two(stmt)
    return extract_witness(stmt, cmt, rsp1, rsp2, rsp3)


# ---------------------------------------------------------------- size accounting


def round_bits(stmt_or_dims, ch: int, lam: int | None = None) -> float:
    """Uncompressed round cost (CMT + RSP) using the protocol's accounting, real logs."""
    m, n, k, N, ell, nct, lam = _dims(stmt_or_dims, lam)
    cmt = 3 * lam
    if ch == 1:
        rsp = 3 * ell + N + 2 * (m + nct * n + lam)
    else:
        rsp = 2 * ell + N + m * (math.log2(m) + 1) + nct * n * (math.log2(n) + 1) + nct * k + 2 * lam
    return cmt + rsp


def beta_bound(stmt_or_dims, lam: int | None = None) -> float:
    """Per-round communication bound (two ciphertext terms for the CCA protocol)."""
    m, n, k, N, ell, nct, lam = _dims(stmt_or_dims, lam)
    return (N + 3 * math.log2(N)) + m * (math.log2(m) + 1) + nct * (n * (math.log2(n) + 1) + k) + 5 * lam


def _dims(obj, lam):
    if isinstance(obj, Statement):
        return obj.m, obj.n, obj.k, obj.N, obj.ell, obj.nct, obj.lam if lam is None else lam
    m, n, k, N, ell, nct = obj
    return m, n, k, N, ell, nct, lam
