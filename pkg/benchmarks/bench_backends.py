"""Compare the compiled kernels with the numpy fallback.

Times the hot operations (bit-vector permutation, matrix-vector products,
Gaussian elimination, Patterson decoding) and one toy-medium sign/verify,
under each backend in turn.
"""

import argparse
import time

from codegs import _backend
from codegs import groupsig as gs
from codegs.algebra import BitMatrix, BitVector, gauss, mat_vec_mul, vec_mat_mul
from codegs.goppa import generate_goppa, patterson_decode
from codegs.rng import Rng


def timeit(fn, reps):
    fn()
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def workloads(reps):
    rng = Rng(1)
    G = BitMatrix.random(1696, 2048, rng)
    H = BitMatrix.random(550, 2756, rng)
    s = BitVector.random(2756, rng)
    u = BitVector.random(1696, rng)
    perm = rng.permutation(2756)
    code = generate_goppa(11, 2048, 32, rng)
    err = BitVector.random_weight(2048, 32, rng)
    p = gs.PARAM_SETS["toy-medium"]
    gpk, _, usks = gs.keygen(p, "cpa", rng)
    sig = gs.sign(gpk, usks[0], b"m", rng)
    return {
        "permute 2756 bits": (lambda: s.permute(perm), reps * 20),
        "H s^T (550x2756)": (lambda: mat_vec_mul(H, s), reps * 20),
        "u G (1696x2048)": (lambda: vec_mat_mul(u, G), reps * 5),
        "fisher-yates 2756": (lambda: rng.permutation(2756), reps * 20),
        "gauss 550x2756": (lambda: gauss(H), max(1, reps // 10)),
        "patterson t=32": (lambda: patterson_decode(code, err), reps),
        "sign toy-medium": (lambda: gs.sign(gpk, usks[0], b"m", rng), max(1, reps // 5)),
        "verify toy-medium": (lambda: gs.verify(gpk, b"m", sig), max(1, reps // 5)),
    }


def main():
    parser = argparse.ArgumentParser(description="Compiled vs pure-Python kernel timings")
    parser.add_argument("--reps", type=int, default=20, help="base repetition count")
    args = parser.parse_args()

    try:
        _backend.use("compiled")
        backends = ["compiled", "python"]
    except ImportError:
        print("compiled extension not built; timing the fallback only")
        backends = ["python"]
    results = {}
    for name in backends:
        _backend.use(name)
        for label, (fn, reps) in workloads(args.reps).items():
            results.setdefault(label, {})[name] = timeit(fn, reps)

    print(f"{'operation':<22}" + "".join(f"{b:>14}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for label, row in results.items():
        line = f"{label:<22}" + "".join(f"{row[b] * 1e3:>11.3f} ms" for b in backends)
        if len(backends) == 2:
            line += f"{row['python'] / row['compiled']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
