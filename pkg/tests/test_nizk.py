import math

import numpy as np
import pytest

from codegs.algebra import BitVector
from codegs.hashing import com, digest_bytes, hash_to_ternary
from codegs.nizk import NizkProof, challenge_input, decompress_proof, fs_challenges, fs_prove, fs_simulate, fs_verify
from codegs.rng import Rng

from conftest import instance

KAPPA = 12


@pytest.fixture(scope="module", params=["cpa", "cca"])
def proved(request):
    rng = Rng(1)
    stmt, w = instance("toy-medium", request.param, rng=rng)
    proof = fs_prove(stmt, w, b"message", KAPPA, rng)
    return stmt, w, proof


def test_hash_to_ternary_deterministic_and_uniform():
    assert hash_to_ternary(b"abc", 50) == hash_to_ternary(b"abc", 50)
    assert hash_to_ternary(b"abc", 50) != hash_to_ternary(b"abd", 50)
    syms = np.array(hash_to_ternary(b"frequency test", 100_000))
    freqs = np.bincount(syms, minlength=4)[1:] / syms.size
    assert set(np.unique(syms)) == {1, 2, 3}
    assert np.all(np.abs(freqs - 1 / 3) < 0.01)
    with pytest.raises(ValueError):
        hash_to_ternary(b"", 0)


def test_commitment_framing_is_injective():
    n = digest_bytes(80)
    a = BitVector.from_bits([1, 0])
    b = BitVector.from_bits([1])
    assert com([a, b], b"r" * n, n) != com([b, a], b"r" * n, n)
    assert com([b"ab", b"c"], b"", n) != com([b"a", b"bc"], b"", n)
    assert len(com([a], b"", n)) == 10 and digest_bytes(20) == 8


def test_prove_verify(proved):
    stmt, _, proof = proved
    assert fs_verify(stmt, b"message", proof, KAPPA)
    assert fs_verify(stmt, b"message", proof.to_bytes(), KAPPA)
    assert not fs_verify(stmt, b"message", proof, KAPPA + 1)


def test_message_mutations_rejected(proved):
    stmt, _, proof = proved
    rng = Rng(2)
    msg = bytearray(b"message")
    for _ in range(100):
        m = bytearray(msg)
        m[rng.below(len(m))] ^= 1 + rng.below(255)
        assert not fs_verify(stmt, bytes(m), proof, KAPPA)


def test_structural_mutations_rejected(proved):
    stmt, _, proof = proved
    raw = proof.to_bytes()
    assert not fs_verify(stmt, b"message", raw[:-1])
    assert not fs_verify(stmt, b"message", raw + b"\x00")
    assert not fs_verify(stmt, b"message", raw[:3])
    assert not fs_verify(stmt, b"message", b"")
    order = [1, 0] + list(range(2, KAPPA))
    swapped = NizkProof([proof.cmts[i] for i in order], [proof.rsps[i] for i in order], [proof.explicit[i] for i in order])
    assert not fs_verify(stmt, b"message", swapped)


def test_byte_flips_rejected(proved):
    stmt, _, proof = proved
    raw = proof.to_bytes()
    rng = Rng(3)
    for _ in range(100):
        data = bytearray(raw)
        data[rng.below(len(data))] ^= 1 << rng.below(8)
        assert not fs_verify(stmt, b"message", bytes(data))


def test_challenge_binding(proved):
    stmt, _, proof = proved
    base = fs_challenges(stmt, b"message", proof.cmts)
    cmts = list(proof.cmts)
    c1, c2, c3 = cmts[0]
    cmts[0] = (bytes([c1[0] ^ 1]) + c1[1:], c2, c3)
    assert fs_challenges(stmt, b"message", cmts) != base
    assert fs_challenges(stmt, b"message", proof.cmts, context=b"other key") != base
    assert not fs_verify(stmt, b"message", proof, context=b"other key")
    other_ct, _ = instance("toy-medium", "cpa" if stmt.nct == 1 else "cca", rng=Rng(99))
    assert challenge_input(other_ct, b"message", proof.cmts) != challenge_input(stmt, b"message", proof.cmts)


def test_serialization_roundtrip(proved):
    stmt, _, proof = proved
    raw = proof.to_bytes()
    parsed, end = NizkProof.from_bytes(raw, stmt)
    assert end == len(raw) and parsed.to_bytes() == raw
    assert raw[0] == 1 and int.from_bytes(raw[1:3], "big") == KAPPA
    assert proof.size_bytes() == len(raw)


def test_compressed_and_decompressed_agree(proved):
    stmt, _, proof = proved
    full = decompress_proof(stmt, proof)
    assert all(full.explicit)
    assert fs_verify(stmt, b"message", full) and fs_verify(stmt, b"message", full.to_bytes())
    assert full.size_bytes() > proof.size_bytes()
    assert not fs_verify(stmt, b"massage", full)


def test_uncompressed_prover_and_parallel_paths(proved):
    stmt, w, _ = proved
    p1 = fs_prove(stmt, w, b"m", KAPPA, Rng(4), compress=False)
    assert fs_verify(stmt, b"m", p1, parallel=True)
    p2 = fs_prove(stmt, w, b"m", KAPPA, Rng(5), parallel=True)
    p3 = fs_prove(stmt, w, b"m", KAPPA, Rng(5))
    assert p2.to_bytes() == p3.to_bytes()


def test_witnessless_proofs_fail():
    stmt, _ = instance("toy-tiny")
    rng = Rng(6)
    accepted = sum(fs_verify(stmt, b"m", fs_simulate(stmt, b"m", 10, rng)) for _ in range(100))
    assert accepted <= 5


def test_140_repetitions_give_80_bit_soundness():
    assert 140 * math.log2(3 / 2) >= 80
    assert (2 / 3) ** 140 < 2.0 ** -80
