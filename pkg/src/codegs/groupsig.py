"""Code-based group signatures: the CPA-anonymous scheme and its
twin-encryption CCA-anonymous extension.

A signer with index j and syndrome-decoding secret s_j (H s_j^T = y_j^T)
encrypts I2B(j) under the manager's McEliece key (twice, under two keys, in
CCA mode) and proves in zero knowledge that the ciphertext hides the index of
some registered syndrome it knows a low-weight preimage for.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .algebra.bits import BitMatrix, BitVector, mat_mul
from .algebra.field import MODULI
from .errors import FormatError, ParameterError, WitnessRelationError
from .hashing import digest_bytes
from .indexcode import b2i, g_hat, i2b
from .mceliece import MEPublicKey, MESecretKey, me_decrypt, me_encrypt_full, me_keygen
from .nizk import NizkProof, fs_prove, fs_verify
from .stern import SEED_BYTES, Statement, Witness, beta_bound

MAGIC = b"CGGS1"
MODES = {"cpa": 1, "cca": 2}
_MODE_NAMES = {v: k for k, v in MODES.items()}
KIND_GPK, KIND_GMSK, KIND_USK, KIND_SIG = 1, 2, 3, 4

C0 = 0  # audited constant in r <= log2 C(m, omega) - 2*lambda - c0


# ---------------------------------------------------------------- parameters


@dataclass(frozen=True)
class ParamSet:
    lam: int
    ell: int
    n: int
    k: int
    t: int
    d: int
    m: int
    r: int
    omega: int
    kappa: int
    name: str = "custom"

    @property
    def N(self):
        return 1 << self.ell

    @property
    def k1(self):
        return self.k - self.ell

    @property
    def k2(self):
        return self.ell

    def with_ell(self, ell):
        return dataclasses.replace(self, ell=ell)

    _FIELDS = ("lam", "ell", "n", "k", "t", "d", "m", "r", "omega", "kappa")

    def header(self) -> bytes:
        return b"".join(int(getattr(self, f)).to_bytes(4, "big") for f in self._FIELDS)

    @classmethod
    def from_header(cls, data, offset=0):
        if len(data) < offset + 40:
            raise FormatError("truncated parameter header")
        vals = [int.from_bytes(data[offset + 4 * i : offset + 4 * i + 4], "big") for i in range(10)]
        return cls(*vals), offset + 40

    def to_config(self) -> str:
        lines = [f"name = {self.name}"] + [f"{f} = {getattr(self, f)}" for f in self._FIELDS]
        return "\n".join(lines) + "\n"


PARAM_SETS = {
    "paper-80": ParamSet(lam=80, ell=8, n=2048, k=1696, t=32, d=11, m=2756, r=550, omega=121, kappa=140, name="paper-80"),
    "toy-medium": ParamSet(lam=20, ell=4, n=128, k=93, t=5, d=7, m=160, r=43, omega=20, kappa=35, name="toy-medium"),
    "toy-tiny": ParamSet(lam=5, ell=2, n=16, k=8, t=2, d=4, m=32, r=13, omega=8, kappa=10, name="toy-tiny"),
}

_ALIASES = {"lambda": "lam", "w": "omega", "l": "ell"}


def parse_config(text: str) -> ParamSet:
    """``key = value`` lines; ``base = <named set>`` starts from a shipped set."""
    values = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"expected 'key = value', got {raw!r}")
        key, val = (p.strip() for p in line.split("=", 1))
        values[_ALIASES.get(key, key)] = val
    base = values.pop("base", None)
    if base is not None:
        if base not in PARAM_SETS:
            raise FormatError(f"unknown base parameter set {base!r}")
        fields = dataclasses.asdict(PARAM_SETS[base])
    else:
        fields = {"name": "custom"}
    for key, val in values.items():
        if key == "name":
            fields["name"] = val
        elif key in ParamSet._FIELDS:
            try:
                fields[key] = int(val)
            except ValueError as exc:
                raise FormatError(f"{key} must be an integer, got {val!r}") from exc
        else:
            raise FormatError(f"unknown parameter {key!r}")
    missing = [f for f in ParamSet._FIELDS if f not in fields]
    if missing:
        raise FormatError(f"missing parameters: {', '.join(missing)}")
    return ParamSet(**fields)


def log2_binomial(m: int, w: int) -> float:
    """log2 C(m, w) from the exact big-integer binomial."""
    return math.log2(math.comb(m, w))


def min_kappa(lam: int) -> int:
    return math.ceil(lam / math.log2(1.5))


@dataclass
class ValidationReport:
    ok: bool
    violations: list
    log2_binom: float
    lhl_slack: float  # log2 C(m, w) - 2*lambda - c0 - r; nonnegative when satisfied

    def __str__(self):
        head = "ok" if self.ok else "violations:\n  " + "\n  ".join(self.violations)
        return f"{head}\nlog2 C(m, omega) = {self.log2_binom:.3f}; leftover-hash slack = {self.lhl_slack:.3f} bits"


def validate_params(p: ParamSet) -> ValidationReport:
    """Check every parameter-set invariant. Returns a report, never raises."""
    v = []
    if p.d not in MODULI:
        v.append(f"d = {p.d} has no tabulated field modulus (2..16)")
    elif p.n > (1 << p.d):
        v.append(f"n = {p.n} exceeds 2^d = {1 << p.d}")
    if p.t < 1:
        v.append("t must be positive")
    if p.k != p.n - p.d * p.t:
        v.append(f"k = {p.k} but n - d*t = {p.n - p.d * p.t}")
    if p.k < 1:
        v.append("k must be positive")
    if not 1 <= p.ell <= p.k:
        v.append(f"ell = {p.ell} outside [1, k]")
    if p.ell > 24:
        v.append(f"ell = {p.ell} too large to materialize N = 2^ell vectors")
    if not 1 <= p.omega <= p.m:
        v.append(f"omega = {p.omega} outside [1, m]")
    if p.m > 65536 or p.n > 65536:
        v.append("m and n must fit 2-byte permutation entries")
    if p.r < 1:
        v.append("r must be positive")
    if p.lam < 1:
        v.append("lambda must be positive")
    kmin = min_kappa(max(p.lam, 1))
    if p.kappa < kmin:
        v.append(f"kappa = {p.kappa} < ceil(lambda / log2(3/2)) = {kmin}")
    lb = log2_binomial(p.m, p.omega) if 0 <= p.omega <= p.m else float("-inf")
    slack = lb - 2 * p.lam - C0 - p.r
    if slack < 0:
        v.append(f"r = {p.r} > log2 C(m, omega) - 2*lambda - c0 = {lb - 2 * p.lam - C0:.3f}")
    return ValidationReport(not v, v, lb, slack)


def resolve_params(name_or_path: str, ell: int | None = None) -> ParamSet:
    if name_or_path in PARAM_SETS:
        p = PARAM_SETS[name_or_path]
    else:
        with open(name_or_path, encoding="utf-8") as fh:
            p = parse_config(fh.read())
    return p.with_ell(ell) if ell is not None else p


# ---------------------------------------------------------------- sizes


def _nct(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be 'cpa' or 'cca', got {mode!r}")
    return MODES[mode]


def pk_size_bits(p: ParamSet, mode="cpa", N: int | None = None) -> int:
    """n*k per McEliece key plus (m + N) * r for H and the syndromes."""
    N = p.N if N is None else N
    return _nct(mode) * p.n * p.k + (p.m + N) * p.r


def sig_size_bound_bits(p: ParamSet, mode="cpa", N: int | None = None) -> float:
    """kappa * beta + ciphertext bits, with real-valued logs."""
    N = p.N if N is None else N
    nct = _nct(mode)
    beta = beta_bound((p.m, p.n, p.k, N, int(math.log2(N)), nct), p.lam)
    return beta * p.kappa + nct * p.n


def expected_sig_bytes(p: ParamSet, mode="cpa", N: int | None = None) -> float:
    """Mean size of a compressed signature in this library's wire format.

    Challenges are uniform over {1, 2, 3}, so the mean response is the mean of
    the three compact shapes.
    """
    N = p.N if N is None else N
    ell = int(math.log2(N))
    nct = _nct(mode)
    db = digest_bytes(p.lam)

    def vb(bits):
        return (bits + 7) // 8

    rsp1 = vb(ell) + 2 * vb(p.m) + vb(N) + vb(2 * ell) + 2 * nct * vb(p.n) + 2 * db
    rsp2 = SEED_BYTES + vb(p.m) + vb(N) + nct * vb(p.k - ell) + vb(2 * ell) + nct * vb(p.n) + db
    rsp3 = SEED_BYTES
    per_round = 3 * db + 5 + (rsp1 + rsp2 + rsp3) / 3
    header = len(MAGIC) + 2 + 40 + nct * (4 + vb(p.n)) + 3
    return header + p.kappa * per_round


# ---------------------------------------------------------------- keys


def _header(kind, mode, p: ParamSet):
    return MAGIC + bytes([kind, MODES[mode]]) + p.header()


def _parse_header(data, kind):
    data = bytes(data)
    if data[:5] != MAGIC:
        raise FormatError("not a group-signature file (bad magic)")
    if len(data) < 7 or data[5] != kind:
        raise FormatError(f"expected object kind {kind}, found {data[5] if len(data) > 5 else None}")
    if data[6] not in _MODE_NAMES:
        raise FormatError("bad mode byte")
    p, pos = ParamSet.from_header(data, 7)
    return data, _MODE_NAMES[data[6]], p, pos


class GroupPublicKey:
    """gpk = (G or G1, G2; H; y_0 .. y_{N-1}) with A = [y_0^T | ... | y_{N-1}^T]."""

    def __init__(self, mode, params: ParamSet, pks, H: BitMatrix, A: BitMatrix):
        self.mode = mode
        self.params = params
        self.pks = tuple(pks)
        self.H = H
        self.A = A
        if len(self.pks) != MODES[mode]:
            raise ParameterError("wrong number of McEliece keys for the mode")
        if (A.rows, A.cols) != (params.r, params.N) or (H.rows, H.cols) != (params.r, params.m):
            raise ParameterError("H or syndrome matrix shape disagrees with parameters")
        self.ghats = tuple(g_hat(pk.G, params.ell) for pk in self.pks)
        self._bytes = None

    @property
    def ys(self):
        return [self.A.column(j) for j in range(self.A.cols)]

    def statement(self, cts) -> Statement:
        p = self.params
        return Statement(self.H, self.A, self.ghats, tuple(cts), p.omega, p.t, p.ell, p.lam)

    def to_bytes(self) -> bytes:
        if self._bytes is None:
            parts = [_header(KIND_GPK, self.mode, self.params), self.H.to_bytes(), self.A.to_bytes()]
            parts += [pk.to_bytes() for pk in self.pks]
            self._bytes = b"".join(parts)
        return self._bytes

    @classmethod
    def from_bytes(cls, data):
        data, mode, p, pos = _parse_header(data, KIND_GPK)
        H, pos = BitMatrix.from_bytes(data, pos)
        A, pos = BitMatrix.from_bytes(data, pos)
        pks = []
        for _ in range(MODES[mode]):
            pk, pos = MEPublicKey.from_bytes(data, pos)
            if (pk.n, pk.k, pk.t, pk.k2) != (p.n, p.k, p.t, p.ell):
                raise FormatError("McEliece key disagrees with parameters")
            pks.append(pk)
        if pos != len(data):
            raise FormatError("trailing bytes after group public key")
        return cls(mode, p, pks, H, A)

    def __eq__(self, other):
        return isinstance(other, GroupPublicKey) and self.to_bytes() == other.to_bytes()


@dataclass(eq=False)
class GroupManagerSecret:
    mode: str
    params: ParamSet
    sk: MESecretKey

    def to_bytes(self):
        return _header(KIND_GMSK, self.mode, self.params) + self.sk.to_bytes()

    @classmethod
    def from_bytes(cls, data):
        data, mode, p, pos = _parse_header(data, KIND_GMSK)
        sk, pos = MESecretKey.from_bytes(data, pos)
        if pos != len(data):
            raise FormatError("trailing bytes after manager key")
        return cls(mode, p, sk)


@dataclass(eq=False)
class UserSecretKey:
    j: int
    s: BitVector
    params: ParamSet
    mode: str = "cpa"

    def to_bytes(self):
        return _header(KIND_USK, self.mode, self.params) + self.j.to_bytes(4, "big") + self.s.to_bytes()

    @classmethod
    def from_bytes(cls, data):
        data, mode, p, pos = _parse_header(data, KIND_USK)
        if len(data) < pos + 4:
            raise FormatError("truncated user key")
        j = int.from_bytes(data[pos : pos + 4], "big")
        s, pos = BitVector.from_bytes(data, pos + 4)
        if pos != len(data) or s.n != p.m or j >= p.N:
            raise FormatError("malformed user key")
        return cls(j, s, p, mode)

    def __eq__(self, other):
        return isinstance(other, UserSecretKey) and self.to_bytes() == other.to_bytes()


def keygen(p: ParamSet, mode: str, rng, return_discarded=False):
    """``(gpk, gmsk, [usk_0 .. usk_{N-1}])``; in CCA mode optionally also the second McEliece key."""
    _nct(mode)
    report = validate_params(p)
    if not report.ok:
        raise ParameterError("invalid parameters: " + "; ".join(report.violations))
    H = BitMatrix.random(p.r, p.m, rng.child("H"))
    urng = rng.child("users")
    secrets = [BitVector.random_weight(p.m, p.omega, urng) for _ in range(p.N)]
    S = BitMatrix.from_rows(secrets, p.m)
    A = mat_mul(H, S.transpose())  # column j is y_j = H s_j^T
    keys = [me_keygen(p.n, p.k, p.t, p.k1, p.k2, rng.child(f"mceliece/{i}")) for i in range(MODES[mode])]
    gpk = GroupPublicKey(mode, p, [pk for pk, _ in keys], H, A)
    gmsk = GroupManagerSecret(mode, p, keys[0][1])
    usks = [UserSecretKey(j, s, p, mode) for j, s in enumerate(secrets)]
    if return_discarded:
        return gpk, gmsk, usks, (keys[1][1] if len(keys) > 1 else None)
    return gpk, gmsk, usks


# ---------------------------------------------------------------- signatures


@dataclass(eq=False)
class GroupSignature:
    mode: str
    cts: tuple
    proof: NizkProof

    def to_bytes(self, params: ParamSet) -> bytes:
        parts = [_header(KIND_SIG, self.mode, params)]
        parts += [c.to_bytes() for c in self.cts]
        parts.append(self.proof.to_bytes())
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, data, gpk: GroupPublicKey):
        data, mode, p, pos = _parse_header(data, KIND_SIG)
        if mode != gpk.mode or p != dataclasses.replace(gpk.params, name=p.name):
            raise FormatError("signature parameters disagree with the public key")
        cts = []
        for _ in range(MODES[mode]):
            c, pos = BitVector.from_bytes(data, pos)
            if c.n != p.n:
                raise FormatError("ciphertext length disagrees with parameters")
            cts.append(c)
        proof, pos = NizkProof.from_bytes(data, gpk.statement(cts), pos)
        if pos != len(data):
            raise FormatError("trailing bytes after signature")
        return cls(mode, tuple(cts), proof)

    def size_bytes(self, params):
        return len(self.to_bytes(params))


def sign(gpk: GroupPublicKey, usk: UserSecretKey, message: bytes, rng, compress=True, parallel=False) -> GroupSignature:
    p = gpk.params
    plain = i2b(usk.j, p.ell) if 0 <= usk.j < p.N else None
    if plain is None:
        raise WitnessRelationError(f"user index {usk.j} outside the group")
    cts, us, es = [], [], []
    for pk in gpk.pks:
        c, u, e = me_encrypt_full(pk, plain, rng)
        cts.append(c)
        us.append(u)
        es.append(e)
    stmt = gpk.statement(cts)
    proof = fs_prove(
        stmt, Witness(usk.j, usk.s, us, es), message, p.kappa, rng,
        context=gpk.to_bytes(), compress=compress, parallel=parallel,
    )
    return GroupSignature(gpk.mode, tuple(cts), proof)


def verify(gpk: GroupPublicKey, message: bytes, sig, parallel=False) -> bool:
    """Accept or reject; malformed signatures are rejected, never raised."""
    try:
        if isinstance(sig, (bytes, bytearray)):
            sig = GroupSignature.from_bytes(sig, gpk)
        if sig.mode != gpk.mode or len(sig.cts) != len(gpk.pks):
            return False
        if any(c.n != gpk.params.n for c in sig.cts):
            return False
        stmt = gpk.statement(sig.cts)
        return fs_verify(stmt, message, sig.proof, gpk.params.kappa, context=gpk.to_bytes(), parallel=parallel)
    except Exception:
        return False


def open_signature(gmsk: GroupManagerSecret, message: bytes, sig: GroupSignature):
    """Signer index from the first ciphertext, or ``None`` when decryption fails.

    The proof is not checked here; callers wanting verify-then-open compose
    the two (the CLI does by default).
    """
    plain = me_decrypt(gmsk.sk, sig.cts[0])
    if plain is None:
        return None
    return b2i(plain)


def syndrome_bit_frequencies(gpk: GroupPublicKey) -> np.ndarray:
    """Per-coordinate fraction of ones across all registered syndromes."""
    return gpk.A.to_array().mean(axis=1)
