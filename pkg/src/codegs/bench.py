"""Wall-clock benchmark of the four group-signature algorithms.

One row per group size: N, public key size, average signature size,
message size, then mean KeyGen / Sign / Verify / Open times in seconds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import groupsig as gs
from .rng import Rng


@dataclass
class BenchRow:
    N: int
    pk_bytes: int
    sig_bytes: float
    msg_bytes: int
    keygen: float
    sign: float
    verify: float
    open: float


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def bench_one(p: gs.ParamSet, mode="cpa", trials=100, msg_bytes=1, seed=None, parallel=False,
              keygen_trials=None) -> BenchRow:
    """Means over ``trials`` runs after one discarded warm-up run of each algorithm."""
    rng = Rng(seed, b"bench")
    keygen_trials = trials if keygen_trials is None else keygen_trials
    message = rng.bytes(msg_bytes) if msg_bytes else b""

    _, keys = _timed(lambda: gs.keygen(p, mode, rng))  # warm-up, also the keys we use
    kg = [_timed(lambda: gs.keygen(p, mode, rng))[0] for _ in range(keygen_trials)]
    gpk, gmsk, usks = keys
    pk_bytes = len(gpk.to_bytes())

    users = [usks[rng.below(len(usks))] for _ in range(trials + 1)]
    st, vt, ot, sizes = [], [], [], []
    for i, usk in enumerate(users):
        t, sig = _timed(lambda: gs.sign(gpk, usk, message, rng, parallel=parallel))
        tv, ok = _timed(lambda: gs.verify(gpk, message, sig, parallel=parallel))
        to, j = _timed(lambda: gs.open_signature(gmsk, message, sig))
        if not ok or j != usk.j:
            raise RuntimeError(f"benchmark self-check failed for user {usk.j}")
        if i == 0:
            continue  # warm-up
        st.append(t)
        vt.append(tv)
        ot.append(to)
        sizes.append(sig.size_bytes(p))

    def mean(xs):
        return sum(xs) / len(xs) if xs else float("nan")

    return BenchRow(p.N, pk_bytes, mean(sizes), msg_bytes, mean(kg), mean(st), mean(vt), mean(ot))


def _human(nbytes: float) -> str:
    for unit in ("B", "KB", "MB", "GB"):
        if nbytes < 1000 or unit == "GB":
            return f"{nbytes:.0f} {unit}" if unit == "B" else f"{nbytes:.3g} {unit}"
        nbytes /= 1000
    return str(nbytes)


HEADER = ("N", "PK Size", "Avg Sig Size", "Message", "KeyGen", "Sign", "Verify", "Open")


def format_rows(rows) -> str:
    table = [HEADER]
    for r in rows:
        table.append((
            f"2^{r.N.bit_length() - 1} (={r.N:,})", _human(r.pk_bytes), _human(r.sig_bytes), _human(r.msg_bytes),
            f"{r.keygen:.3f}", f"{r.sign:.3f}", f"{r.verify:.3f}", f"{r.open:.3f}",
        ))
    widths = [max(len(row[i]) for row in table) for i in range(len(HEADER))]
    lines = [" | ".join(c.rjust(w) for c, w in zip(row, widths)) for row in table]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines)
