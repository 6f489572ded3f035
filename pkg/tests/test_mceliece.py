import pytest

from codegs.algebra import BitMatrix, BitVector, mat_mul, vec_mat_mul
from codegs.errors import FormatError, ParameterError
from codegs.mceliece import (
    MEPublicKey,
    MESecretKey,
    me_decrypt,
    me_encrypt,
    me_encrypt_full,
    me_encrypt_with,
    me_keygen,
)
from codegs.rng import Rng


@pytest.fixture(scope="module")
def toy():
    return me_keygen(128, 93, 5, 89, 4, Rng(1))


def test_key_invariants(toy):
    pk, sk = toy
    assert (pk.k1, pk.k2) == (89, 4)
    assert pk.G.rank() == 93
    assert mat_mul(sk.S, sk.S_inv) == BitMatrix.identity(93)
    assert sorted(sk.perm.tolist()) == list(range(128))
    assert mat_mul(sk.S, sk.code.Gmat).permute_columns(sk.perm) == pk.G


def test_parameter_errors():
    with pytest.raises(ParameterError):
        me_keygen(128, 93, 5, 90, 4, Rng(0))
    with pytest.raises(ParameterError):
        me_keygen(128, 94, 5, 90, 4, Rng(0))


def test_zero_pad_zero_message_gives_error_vector(toy):
    pk, _ = toy
    e = BitVector.random_weight(128, 5, Rng(2))
    assert me_encrypt_with(pk, BitVector.zeros(4), BitVector.zeros(89), e) == e


def test_roundtrip_and_error_weight(toy):
    pk, sk = toy
    rng = Rng(3)
    for _ in range(300):
        msg = BitVector.random(4, rng)
        c, u, e = me_encrypt_full(pk, msg, rng)
        assert (c ^ vec_mat_mul(u.concat(msg), pk.G)).weight() == 5
        assert me_decrypt(sk, c) == msg


def test_malleability(toy):
    pk, sk = toy
    rng = Rng(4)
    for _ in range(20):
        msg, dlt = BitVector.random(4, rng), BitVector.random(4, rng)
        c = me_encrypt(pk, msg, rng)
        shift = vec_mat_mul(BitVector.zeros(89).concat(dlt), pk.G)
        assert me_decrypt(sk, c ^ shift) == msg ^ dlt


def test_extra_error_never_crashes(toy):
    pk, sk = toy
    rng = Rng(5)
    for _ in range(1000):
        msg = BitVector.random(4, rng)
        c, _, e = me_encrypt_full(pk, msg, rng)
        free = [i for i in range(128) if not e[i]]
        flip = BitVector.from_positions(128, [free[rng.below(len(free))]])
        out = me_decrypt(sk, c ^ flip)
        assert out is None or out.n == 4


def test_random_ciphertexts_mostly_rejected(toy):
    _, sk = toy
    rng = Rng(6)
    bot = sum(me_decrypt(sk, BitVector.random(128, rng)) is None for _ in range(200))
    assert bot >= 196


def test_serialization(toy):
    pk, sk = toy
    pk2, end = MEPublicKey.from_bytes(pk.to_bytes())
    assert pk2 == pk and end == len(pk.to_bytes())
    sk2, _ = MESecretKey.from_bytes(sk.to_bytes())
    msg = BitVector.from_bits([1, 0, 1, 1])
    assert me_decrypt(sk2, me_encrypt(pk, msg, Rng(7))) == msg
    with pytest.raises(FormatError):
        MEPublicKey.from_bytes(sk.to_bytes())
    with pytest.raises(FormatError):
        MEPublicKey.from_bytes(b"XXXXX" + pk.to_bytes()[5:])


def test_full_size_keys():
    pk, sk = me_keygen(2048, 1696, 32, 1688, 8, Rng(8))
    rng = Rng(9)
    for _ in range(10):
        msg = BitVector.random(8, rng)
        assert me_decrypt(sk, me_encrypt(pk, msg, rng)) == msg
