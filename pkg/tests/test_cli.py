import filecmp
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from codegs.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def keys(tmp_path, capsys):
    code, out, _ = run(["keygen", "--params", "toy-tiny", "--seed", "7", "--out", tmp_path / "k"], capsys)
    assert code == 0
    msg = tmp_path / "msg"
    msg.write_bytes(b"x")
    return tmp_path, tmp_path / "k", msg


def test_keygen_writes_group(tmp_path, capsys):
    code, out, _ = run(["keygen", "--params", "toy-medium", "--mode", "cca", "--out", tmp_path], capsys)
    assert code == 0 and "public key:" in out
    assert {"gpk.cggs", "gmsk.cggs"} <= set(os.listdir(tmp_path))
    assert len([f for f in os.listdir(tmp_path) if f.startswith("gsk_")]) == 16


def test_keygen_reports_80bit_key_size(capsys):
    code, out, _ = run(["keygen", "--params", "paper-80", "--mode", "cpa", "--seed", "1"], capsys)
    assert code == 0 and "public key: 5130008 bits" in out


def test_keygen_deterministic_under_seed(tmp_path, capsys):
    for d in ("a", "b"):
        run(["keygen", "--params", "toy-tiny", "--seed", "42", "--out", tmp_path / d], capsys)
    cmp = filecmp.dircmp(tmp_path / "a", tmp_path / "b")
    assert not cmp.diff_files and not cmp.left_only and len(cmp.same_files) == 6
    for name in cmp.same_files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_keygen_rejects_bad_parameters(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("base = toy-medium\nr = 84\n")
    code, _, err = run(["keygen", "--params", cfg], capsys)
    assert code == 2 and "log2 C" in err


def test_sign_verify_open(keys, capsys):
    tmp, k, msg = keys
    sig = tmp / "sig"
    assert run(["sign", "--keys", k, "--user", 3, "--msg", msg, "--sig", sig], capsys)[0] == 0
    assert run(["verify", "--keys", k, "--msg", msg, "--sig", sig], capsys)[0] == 0
    code, out, _ = run(["open", "--keys", k, "--msg", msg, "--sig", sig], capsys)
    assert code == 0 and out.strip() == "3"
    code, out, _ = run(["open", "--keys", k, "--msg", msg, "--sig", sig, "--raw-open"], capsys)
    assert code == 0 and out.strip() == "3"


def test_flipped_byte_fails_verify(keys, capsys):
    tmp, k, msg = keys
    sig = tmp / "sig"
    run(["sign", "--keys", k, "--user", 1, "--msg", msg, "--sig", sig, "--seed", 3], capsys)
    data = bytearray(sig.read_bytes())
    for pos in (len(data) // 3, len(data) // 2, len(data) - 1):
        bad = bytearray(data)
        bad[pos] ^= 0x10
        sig.write_bytes(bytes(bad))
        assert run(["verify", "--keys", k, "--msg", msg, "--sig", sig], capsys)[0] == 1
        assert run(["open", "--keys", k, "--msg", msg, "--sig", sig], capsys)[0] == 1


def test_open_failure_prints_bot(keys, capsys):
    tmp, k, msg = keys
    sig = tmp / "sig"
    run(["sign", "--keys", k, "--msg", msg, "--sig", sig], capsys)
    data = bytearray(sig.read_bytes())
    # header is 5 + 2 + 40 bytes, then the ciphertext's 4-byte length and payload
    bot = 0
    for v in range(256):
        data[51] = v
        data[52] = v ^ 0xA5
        sig.write_bytes(bytes(data))
        code, out, _ = run(["open", "--keys", k, "--msg", msg, "--sig", sig, "--raw-open"], capsys)
        assert code in (0, 3)
        if code == 3:
            assert out.strip() == "BOT"
            bot += 1
    assert bot > 0


def test_parse_errors_exit_2(keys, capsys):
    tmp, k, msg = keys
    junk = tmp / "junk"
    junk.write_bytes(b"not a signature")
    assert run(["verify", "--keys", tmp / "missing", "--msg", msg, "--sig", junk], capsys)[0] == 2
    assert run(["open", "--keys", k, "--msg", msg, "--sig", junk, "--raw-open"], capsys)[0] == 2
    assert run(["sign", "--keys", k, "--user", 0, "--msg", msg], capsys)[0] == 2
    assert run(["verify", "--keys", k, "--msg", msg], capsys)[0] == 2
    code, _, err = run(["keygen", "--params", "no-such-set"], capsys)
    assert code == 2 and "cannot read" in err
    with pytest.raises(SystemExit) as exc:
        main(["keygen", "--mode", "xyz"])
    assert exc.value.code == 2


def test_sizes_command(capsys):
    code, out, _ = run(["sizes", "--params", "paper-80", "--ells", "8,16,24"], capsys)
    assert code == 0 and "5130008" in out and "41034008" in out and "slack" in out


def test_bench_command_layout(capsys):
    code, out, _ = run(["bench", "--params", "toy-tiny", "--trials", "3", "--seed", "1", "--ells", "2,3"], capsys)
    assert code == 0
    header = out.splitlines()[1]
    for col in ("N", "PK Size", "Avg Sig Size", "Message", "KeyGen", "Sign", "Verify", "Open"):
        assert col in header
    assert "2^3 (=8)" in out


def test_golden_fixture_is_reproduced(tmp_path, capsys):
    k = tmp_path / "keys"
    run(["keygen", "--params", "toy-tiny", "--mode", "cpa", "--seed", 1, "--out", k], capsys)
    shutil.copy(GOLDEN / "message.txt", tmp_path / "message.txt")
    run(["sign", "--keys", k, "--user", 2, "--msg", tmp_path / "message.txt",
         "--sig", tmp_path / "signature.cggs", "--seed", 1], capsys)
    for name in os.listdir(GOLDEN / "keys"):
        assert (k / name).read_bytes() == (GOLDEN / "keys" / name).read_bytes(), name
    assert (tmp_path / "signature.cggs").read_bytes() == (GOLDEN / "signature.cggs").read_bytes()
    gk, gm, gs_ = GOLDEN / "keys", GOLDEN / "message.txt", GOLDEN / "signature.cggs"
    assert run(["verify", "--keys", gk, "--msg", gm, "--sig", gs_], capsys)[0] == 0
    code, out, _ = run(["open", "--keys", gk, "--msg", gm, "--sig", gs_], capsys)
    assert code == 0 and out.strip() == "2"


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "codegs", "sizes", "--params", "toy-tiny"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and "pk bits" in res.stdout
