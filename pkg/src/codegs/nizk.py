"""Fiat-Shamir transform of the Stern-type argument with seed-compressed responses.

Wire format of a proof::

    version (1 byte) || kappa (2 bytes) || kappa * (c1 || c2 || c3)
        || kappa * (tag (1 byte) || body length (4 bytes) || body)

``tag`` is the challenge (1, 2, 3) for compact answers and ``0x80 | ch``
for uncompressed ones. Challenges are not stored; the verifier recomputes
them from the message, the commitments, the public key and the ciphertexts.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import FormatError
from .hashing import com, hash_to_ternary  # noqa: F401  (COM is re-exported here)
from .stern import (
    COMPACT_TYPES,
    RSP_TYPES,
    SEED_BYTES,
    Statement,
    compress_rsp,
    decompress_rsp,
    commit,
    respond,
    simulate_commit,
    simulate_compact,
    verify_round,
)

VERSION = 1
EXPLICIT = 0x80


@dataclass(eq=False)
class NizkProof:
    cmts: list
    rsps: list
    explicit: list = field(default=None)

    def __post_init__(self):
        if self.explicit is None:
            self.explicit = [False] * len(self.rsps)

    @property
    def kappa(self):
        return len(self.cmts)

    def to_bytes(self) -> bytes:
        out = [bytes([VERSION]), self.kappa.to_bytes(2, "big")]
        out += [b"".join(c) for c in self.cmts]
        for rsp, ex in zip(self.rsps, self.explicit):
            body = rsp.body()
            out.append(bytes([rsp.ch | (EXPLICIT if ex else 0)]) + len(body).to_bytes(4, "big") + body)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes, stmt: Statement, offset=0):
        """Parse a proof; returns ``(proof, new_offset)``."""
        data = bytes(data)
        if len(data) < offset + 3 or data[offset] != VERSION:
            raise FormatError("bad proof header")
        kappa = int.from_bytes(data[offset + 1 : offset + 3], "big")
        pos = offset + 3
        db = stmt.rho_bytes
        cmts = []
        for _ in range(kappa):
            if pos + 3 * db > len(data):
                raise FormatError("truncated commitments")
            cmts.append(tuple(data[pos + i * db : pos + (i + 1) * db] for i in range(3)))
            pos += 3 * db
        rsps, explicit = [], []
        for _ in range(kappa):
            if pos + 5 > len(data):
                raise FormatError("truncated response header")
            tag = data[pos]
            size = int.from_bytes(data[pos + 1 : pos + 5], "big")
            pos += 5
            if pos + size > len(data):
                raise FormatError("truncated response body")
            body = data[pos : pos + size]
            pos += size
            ch, ex = tag & 0x7F, bool(tag & EXPLICIT)
            if ch not in (1, 2, 3) or tag & 0x7C:
                raise FormatError(f"bad response tag {tag:#x}")
            kind = RSP_TYPES[ch] if ex else COMPACT_TYPES[ch]
            rsps.append(kind.parse(stmt, body))
            explicit.append(ex)
        return cls(cmts, rsps, explicit), pos

    def size_bytes(self) -> int:
        return len(self.to_bytes())


def challenge_input(stmt: Statement, message: bytes, cmts, context: bytes | None = None) -> bytes:
    """Message first, then commitments in round order, then public key, then ciphertexts."""
    if context is None:
        context = stmt.to_bytes()
    parts = [len(message).to_bytes(8, "big"), bytes(message)]
    parts += [b"".join(c) for c in cmts]
    parts += [len(context).to_bytes(8, "big"), context]
    parts += [c.to_bytes() for c in stmt.cts]
    return b"".join(parts)


def fs_challenges(stmt, message, cmts, context=None):
    return hash_to_ternary(challenge_input(stmt, message, cmts, context), len(cmts))


def _map(fn, items, parallel):
    if not parallel:
        return [fn(x) for x in items]
    with ThreadPoolExecutor() as pool:
        return list(pool.map(fn, items))


def fs_prove(stmt, witness, message: bytes, kappa: int, rng, context=None, compress=True, parallel=False):
    """Non-interactive proof: kappa commits, one hash for all challenges, then responses."""
    seeds = [rng.bytes(SEED_BYTES) for _ in range(kappa)]
    committed = _map(lambda sd: commit(stmt, witness, sd), seeds, parallel)
    cmts = [c for c, _ in committed]
    chs = fs_challenges(stmt, message, cmts, context)
    answer = compress_rsp if compress else respond
    rsps = _map(lambda pair: answer(pair[0][1], pair[1]), list(zip(committed, chs)), parallel)
    return NizkProof(cmts, rsps, [not compress] * kappa)


def fs_verify(stmt, message: bytes, proof, kappa: int | None = None, context=None, parallel=False) -> bool:
    """Accept iff the challenge hash matches and every round verifies. Never raises."""
    try:
        if isinstance(proof, (bytes, bytearray)):
            raw = bytes(proof)
            proof, end = NizkProof.from_bytes(raw, stmt)
            # trailing garbage is a rejection, not something to ignore
            if end != len(raw):
                return False
        if kappa is not None and proof.kappa != kappa:
            return False
        if proof.kappa < 1 or len(proof.rsps) != proof.kappa:
            return False
        chs = fs_challenges(stmt, message, proof.cmts, context)

        def check(i):
            rsp, ch = proof.rsps[i], chs[i]
            if rsp.ch != ch:
                return False
            full = rsp if proof.explicit[i] else decompress_rsp(rsp, ch, stmt)
            return verify_round(stmt, proof.cmts[i], ch, full)

        if parallel:
            return all(_map(check, range(proof.kappa), True))
        return all(check(i) for i in range(proof.kappa))
    except Exception:
        return False


def decompress_proof(stmt, proof: NizkProof) -> NizkProof:
    """Same proof with every compact answer expanded to its explicit form."""
    rsps = [r if ex else decompress_rsp(r, r.ch, stmt) for r, ex in zip(proof.rsps, proof.explicit)]
    return NizkProof(list(proof.cmts), rsps, [True] * proof.kappa)


def fs_simulate(stmt, message: bytes, kappa: int, rng, context=None) -> NizkProof:
    """Witnessless proof attempt built from simulator rounds.

    Each round guesses a challenge it cannot answer; if the hash picks that
    challenge anyway the round answers as a cheater would and fails.
    """
    sims = [simulate_commit(stmt, rng.below(3) + 1, rng) for _ in range(kappa)]
    cmts = [c for c, _ in sims]
    chs = fs_challenges(stmt, message, cmts, context)
    rsps = [simulate_compact(s, ch, forced=True) for (_, s), ch in zip(sims, chs)]
    return NizkProof(cmts, rsps)
