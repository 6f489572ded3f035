"""Command-line front end: ``codegs keygen|sign|verify|open|sizes|bench``.

Exit codes: 0 ok, 1 signature rejected, 2 usage or parse error, 3 open failed.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import groupsig as gs
from .bench import bench_one, format_rows
from .errors import CodeGSError
from .rng import Rng

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_OPEN_FAIL = 0, 1, 2, 3

GPK_FILE = "gpk.cggs"
GMSK_FILE = "gmsk.cggs"


def gsk_file(j):
    return f"gsk_{j}.cggs"


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path, data):
    with open(path, "wb") as fh:
        fh.write(data)


def _rng(args):
    return Rng(args.seed) if args.seed is not None else Rng()


def _params(args):
    try:
        return gs.resolve_params(args.params, args.ell)
    except OSError as exc:
        raise UsageError(f"cannot read parameter file {args.params}: {exc.strerror}") from exc


def _load_gpk(args):
    return gs.GroupPublicKey.from_bytes(_read(os.path.join(args.keys, GPK_FILE)))


def cmd_keygen(args):
    p = _params(args)
    report = gs.validate_params(p)
    if not report.ok:
        print(f"parameter set {p.name} rejected", file=sys.stderr)
        print(report, file=sys.stderr)
        return EXIT_USAGE
    gpk, gmsk, usks = gs.keygen(p, args.mode, _rng(args))
    print(f"public key: {gs.pk_size_bits(p, args.mode)} bits")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        _write(os.path.join(args.out, GPK_FILE), gpk.to_bytes())
        _write(os.path.join(args.out, GMSK_FILE), gmsk.to_bytes())
        for usk in usks:
            _write(os.path.join(args.out, gsk_file(usk.j)), usk.to_bytes())
        print(f"wrote {len(usks) + 2} files to {args.out}")
    return EXIT_OK


def cmd_sign(args):
    gpk = _load_gpk(args)
    usk_path = args.gsk or os.path.join(args.keys, gsk_file(args.user))
    usk = gs.UserSecretKey.from_bytes(_read(usk_path))
    sig = gs.sign(gpk, usk, _read(args.msg), _rng(args), parallel=args.parallel_rounds)
    out = args.sig or args.out
    if not out:
        raise UsageError("sign needs --sig (or --out) for the signature file")
    _write(out, sig.to_bytes(gpk.params))
    print(f"signature: {sig.size_bytes(gpk.params)} bytes")
    return EXIT_OK


def cmd_verify(args):
    gpk = _load_gpk(args)
    ok = gs.verify(gpk, _read(args.msg), _read(args.sig), parallel=args.parallel_rounds)
    print("accept" if ok else "reject")
    return EXIT_OK if ok else EXIT_REJECT


def cmd_open(args):
    gmsk = gs.GroupManagerSecret.from_bytes(_read(os.path.join(args.keys, GMSK_FILE)))
    message, raw = _read(args.msg), _read(args.sig)
    if not args.raw_open:
        gpk = _load_gpk(args)
        if not gs.verify(gpk, message, raw, parallel=args.parallel_rounds):
            print("reject", file=sys.stderr)
            return EXIT_REJECT
        sig = gs.GroupSignature.from_bytes(raw, gpk)
    else:
        sig = _parse_sig_loosely(raw, gmsk)
    j = gs.open_signature(gmsk, message, sig)
    if j is None:
        print("BOT")
        return EXIT_OPEN_FAIL
    print(j)
    return EXIT_OK


def _parse_sig_loosely(raw, gmsk):
    """Pull the ciphertexts out of a signature without a public key at hand."""
    from .algebra.bits import BitVector

    # the proof bytes are skipped, not parsed
    data, mode, p, pos = gs._parse_header(raw, gs.KIND_SIG)
    cts = []
    for _ in range(gs.MODES[mode]):
        c, pos = BitVector.from_bytes(data, pos)
        cts.append(c)
    if cts[0].n != gmsk.sk.code.n:
        raise UsageError("ciphertext length disagrees with the manager key")
    return gs.GroupSignature(mode, tuple(cts), None)


def cmd_sizes(args):
    p = _params(args)
    ells = args.ells or [p.ell]
    print(gs.validate_params(p))
    print(f"{'N':>10} {'pk bits':>14} {'sig bound bits':>16} {'est. compressed sig':>20}")
    for ell in ells:
        q = p.with_ell(ell)
        print(f"{q.N:>10} {gs.pk_size_bits(q, args.mode):>14} {gs.sig_size_bound_bits(q, args.mode):>16.4g}"
              f" {gs.expected_sig_bytes(q, args.mode) / 1000:>17.1f} KB")
    return EXIT_OK


def cmd_bench(args):
    p = _params(args)
    rows = []
    for ell in args.ells or [p.ell]:
        q = p.with_ell(ell)
        rows.append(bench_one(q, args.mode, trials=args.trials, msg_bytes=args.msg_bytes, seed=args.seed,
                              parallel=args.parallel_rounds, keygen_trials=args.keygen_trials))
    print(f"{p.name} ({args.mode.upper()}), means over {args.trials} trials, seconds")
    print(format_rows(rows))
    return EXIT_OK


def _ell_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="codegs", description="Code-based group signatures")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", default="toy-medium", help="named parameter set or path to a key = value file")
    common.add_argument("--mode", choices=sorted(gs.MODES), default="cpa")
    common.add_argument("--seed", type=int, help="u64 seed for reproducible output")
    common.add_argument("--ell", type=int, help="override log2 of the group size")
    common.add_argument("--parallel-rounds", action="store_true", help="run proof rounds in a thread pool")
    common.add_argument("--keys", default="keys", help="key directory (default: keys)")
    common.add_argument("--out", help="output directory (keygen) or file (sign)")
    common.add_argument("--msg", help="message file")
    common.add_argument("--sig", help="signature file")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("keygen", parents=[common], help="generate group keys")
    p = sub.add_parser("sign", parents=[common], help="sign a message as a group member")
    p.add_argument("--user", type=int, default=0, help="member index whose key is used")
    p.add_argument("--gsk", help="explicit member key file instead of --keys/--user")
    sub.add_parser("verify", parents=[common], help="verify a group signature")
    p = sub.add_parser("open", parents=[common], help="reveal the signer of a signature")
    p.add_argument("--raw-open", action="store_true", help="skip verification and just decrypt")
    p = sub.add_parser("sizes", parents=[common], help="key and signature size calculator")
    p.add_argument("--ells", type=_ell_list, help="comma-separated list of log2 N values")
    p = sub.add_parser("bench", parents=[common], help="time keygen/sign/verify/open")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--keygen-trials", type=int, help="keygen repetitions (default: --trials)")
    p.add_argument("--msg-bytes", type=int, default=1)
    p.add_argument("--ells", type=_ell_list, help="comma-separated list of log2 N values")
    return parser


COMMANDS = {
    "keygen": cmd_keygen, "sign": cmd_sign, "verify": cmd_verify,
    "open": cmd_open, "sizes": cmd_sizes, "bench": cmd_bench,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    needs = {"sign": ("msg",), "verify": ("msg", "sig"), "open": ("msg", "sig")}
    for name in needs.get(args.command, ()):
        if getattr(args, name) is None:
            print(f"codegs {args.command}: --{name} is required", file=sys.stderr)
            return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, CodeGSError, ValueError) as exc:
        print(f"codegs {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
