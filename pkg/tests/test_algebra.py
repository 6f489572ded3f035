import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codegs.algebra import (
    MODULI,
    AffineSolver,
    BitMatrix,
    BitVector,
    F2mElement,
    F2mPoly,
    f2m_inv,
    f2m_mul,
    f2m_pow,
    field,
    gauss,
    inverse,
    mat_mul,
    mat_vec_mul,
    nullspace,
    poly_eval,
    poly_gcd_ext,
    poly_inv_mod,
    poly_is_irreducible,
    poly_mulmod,
    poly_sqrt_mod,
    random_invertible,
    solve_affine,
    vec_mat_mul,
)
from codegs.algebra.field import clmul, gf2_is_irreducible
from codegs.errors import DimensionError, FormatError, ModulusError, NoSolution, ZeroInversionError
from codegs.rng import Rng


# ---- oracles: plain integer / numpy arithmetic, no library code

def slow_mul(a, b, d, mod):
    acc = 0
    for i in range(d):
        if (b >> i) & 1:
            acc ^= a << i
    for i in range(2 * d - 2, d - 1, -1):
        if (acc >> i) & 1:
            acc ^= mod << (i - d)
    return acc


def gf2_rank(arr):
    a = np.array(arr, dtype=np.uint8) % 2
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        piv = [r for r in range(rank, rows) if a[r, c]]
        if not piv:
            continue
        a[[rank, piv[0]]] = a[[piv[0], rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
    return rank


bits_lists = st.lists(st.integers(0, 1), min_size=0, max_size=200)


# ---- BitVector

@given(bits_lists)
def test_bitvector_roundtrip_and_pad(bits):
    v = BitVector.from_bits(bits)
    assert v.bits().tolist() == bits
    assert v.weight() == sum(bits)
    if v.n % 64:
        assert int(v.w[-1]) >> (v.n % 64) == 0
    w, end = BitVector.from_bytes(v.to_bytes())
    assert w == v and end == len(v.to_bytes())


@given(bits_lists, st.data())
def test_xor_involution_and_linearity(bits, data):
    v = BitVector.from_bits(bits)
    u = BitVector.from_bits(data.draw(st.lists(st.integers(0, 1), min_size=len(bits), max_size=len(bits))))
    assert (v ^ u) ^ u == v
    assert (v ^ v).is_zero()


def test_canonical_serialization_layout():
    v = BitVector.from_bits([1, 0, 0, 0, 0, 0, 0, 0, 1, 1])
    assert v.to_bytes() == (10).to_bytes(4, "big") + bytes([0b00000001, 0b00000011])


def test_nonzero_pad_bits_rejected():
    with pytest.raises(FormatError):
        BitVector.from_packed(bytes([0xFF]), 3)


def test_permute_convention():
    v = BitVector.from_bits([1, 1, 0, 0])
    # output i takes input perm[i]
    assert v.permute(np.array([2, 0, 3, 1])).bits().tolist() == [0, 1, 0, 1]


def test_random_weight_exact():
    rng = Rng(3)
    for n, w in [(16, 0), (16, 16), (2756, 121)]:
        assert BitVector.random_weight(n, w, rng).weight() == w


# ---- matrices

def test_mat_vec_examples():
    assert mat_vec_mul(BitMatrix.identity(4), BitVector.from_bits([1, 0, 1, 1])).bits().tolist() == [1, 0, 1, 1]
    assert mat_vec_mul(BitMatrix.zeros(3, 5), BitVector.from_bits([1] * 5)).is_zero()
    M = BitMatrix.from_array([[1, 1], [0, 1]])
    assert mat_vec_mul(M, BitVector.from_bits([1, 1])).bits().tolist() == [0, 1]
    with pytest.raises(DimensionError):
        mat_vec_mul(M, BitVector.from_bits([1, 1, 1]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 70), st.integers(1, 150), st.integers(0, 2**32))
def test_products_match_integer_oracle(r, c, seed):
    rng = Rng(seed)
    M = BitMatrix.random(r, c, rng)
    v = BitVector.random(c, rng)
    u = BitVector.random(r, rng)
    A = M.to_array().astype(np.int64)
    assert mat_vec_mul(M, v).bits().tolist() == ((A @ v.bits()) % 2).tolist()
    assert vec_mat_mul(u, M).bits().tolist() == ((u.bits() @ A) % 2).tolist()
    B = BitMatrix.random(c, 9, rng)
    assert np.array_equal(mat_mul(M, B).to_array(), (A @ B.to_array().astype(np.int64)) % 2)
    assert gauss(M)[0] == gf2_rank(A) == M.rank()


def test_linearity_of_products():
    rng = Rng(5)
    for _ in range(50):
        M = BitMatrix.random(17, 130, rng)
        u, v = BitVector.random(130, rng), BitVector.random(130, rng)
        assert mat_vec_mul(M, u ^ v) == mat_vec_mul(M, u) ^ mat_vec_mul(M, v)


def test_gauss_examples():
    assert gauss(BitMatrix.identity(7))[0] == 7
    assert gauss(BitMatrix.from_array([[1, 1, 0], [1, 0, 1], [0, 1, 1]]))[0] == 2
    row = [1, 0, 1, 1, 0]
    assert gauss(BitMatrix.from_array([row, row, [0, 1, 0, 0, 1]]))[0] <= 2
    rank, R, piv = gauss(BitMatrix.random(20, 40, Rng(1)))
    arr = R.to_array()
    assert len(piv) == rank
    for i, c in enumerate(piv):
        assert arr[i, c] == 1 and arr[:, c].sum() == 1


def test_matrix_serialization_roundtrip():
    M = BitMatrix.random(13, 77, Rng(2))
    data = M.to_bytes()
    assert data[:8] == (13).to_bytes(4, "big") + (77).to_bytes(4, "big")
    M2, end = BitMatrix.from_bytes(data)
    assert M2 == M and end == len(data)


def test_solve_affine_examples():
    rng = Rng(9)
    y = BitVector.random(6, rng)
    assert solve_affine(BitMatrix.identity(6), y) == y
    with pytest.raises(NoSolution):
        solve_affine(BitMatrix.zeros(4, 4), BitVector.from_bits([0, 1, 0, 0]))
    with pytest.raises(DimensionError):
        solve_affine(BitMatrix.identity(4), BitVector.random(5, rng))


def test_solve_affine_reproduces_rhs():
    rng = Rng(11)
    for i in range(1000):
        r, c = (5, 8) if i % 2 else (int(rng.below(12)) + 1, int(rng.below(40)) + 1)
        M = BitMatrix.random(r, c, rng)
        y = BitVector.random(r, rng)
        try:
            z = solve_affine(M, y, rng if i % 3 == 0 else None)
        except NoSolution:
            assert gf2_rank(np.hstack([M.to_array(), y.bits()[:, None]])) > gf2_rank(M.to_array())
            continue
        assert mat_vec_mul(M, z) == y


def test_random_solutions_cover_the_coset():
    M = BitMatrix.from_array([[1, 1, 0, 0], [0, 0, 1, 1]])
    solver = AffineSolver(M)
    rng = Rng(4)
    seen = {solver.solve(BitVector.from_bits([1, 0]), rng) for _ in range(200)}
    assert len(seen) == 4 and solver.nullity == 2


def test_nullspace():
    M = BitMatrix.random(30, 70, Rng(8))
    K = nullspace(M)
    assert K.rows == 70 - M.rank()
    assert mat_mul(M, K.transpose()).to_array().sum() == 0


def test_random_invertible_and_inverse():
    rng = Rng(6)
    assert random_invertible(1, rng).to_array().tolist() == [[1]]
    for k in (2, 17, 64, 130):
        S = random_invertible(k, rng)
        assert mat_mul(S, inverse(S)) == BitMatrix.identity(k)


def test_invertible_fraction_matches_product_formula():
    rng = Rng(21)
    trials = 10_000
    hits = sum(BitMatrix.random(16, 16, rng).rank() == 16 for _ in range(trials))
    expected = np.prod([1 - 2.0 ** -i for i in range(1, 17)])
    assert abs(hits / trials - expected) < 0.02


# ---- GF(2^d)

def test_gf8_examples():
    F = field(3)
    assert F.mul(0b010, 0b010) == 0b100
    assert F.inv(0b010) == 0b101
    for a in range(1, 8):
        assert F.pow(a, 7) == 1
    with pytest.raises(ZeroInversionError):
        F.inv(0)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 8])
def test_field_tables_match_schoolbook(d):
    F = field(d)
    for a in range(1 << d):
        for b in range(1 << d):
            assert F.mul(a, b) == slow_mul(a, b, d, MODULI[d])
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.mul(F.sqrt(a), F.sqrt(a)) == a


@pytest.mark.parametrize("d", [3, 4])
def test_distributivity_exhaustive(d):
    F = field(d)
    q = 1 << d
    for a, b, c in itertools.product(range(q), repeat=3):
        assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)


def test_element_wrappers():
    F = field(4)
    a, b = F.element(7), F.element(9)
    assert int(a * b) == F.mul(7, 9)
    assert int(a + b) == 7 ^ 9
    assert int(a * a.inverse()) == 1
    assert f2m_mul(7, 9, F) == F.mul(7, 9)
    assert f2m_inv(7, F) == F.inv(7)
    assert f2m_pow(7, 5, F) == F.pow(7, 5)
    assert isinstance(a, F2mElement)


def test_moduli_are_irreducible():
    # independent trial division by every polynomial of degree <= d/2
    for d, mod in MODULI.items():
        assert mod.bit_length() == d + 1
        assert gf2_is_irreducible(mod)
        for p in range(2, 1 << (d // 2 + 1)):
            q = mod  # carry-less remainder of mod by p
            while q.bit_length() >= p.bit_length():
                q ^= p << (q.bit_length() - p.bit_length())
            assert q != 0, (d, p)
    assert clmul(0b11, 0b11) == 0b101


# ---- polynomials

def test_poly_eval_example():
    F = field(3)
    p = F2mPoly([1, 0, 1], F)
    assert poly_eval(p, 0b010) == 0b101
    pts = np.arange(8)
    assert p.eval_many(pts).tolist() == [poly_eval(p, int(a)) for a in pts]


def test_gcd_ext_identity_and_examples():
    F = field(3)
    rng = Rng(2)
    g = F2mPoly.random_monic(4, F, rng)
    d, a, b = poly_gcd_ext(g, g)
    assert d == g and a * g + b * g == d
    for _ in range(50):
        p = F2mPoly.random_monic(3, F, rng)
        d, a, b = poly_gcd_ext(p, g)
        assert a * p + b * g == d


def test_nonmonic_modulus_rejected():
    F = field(3)
    g = F2mPoly([1, 1, 3], F)
    with pytest.raises(ModulusError):
        poly_mulmod(F2mPoly.one(F), F2mPoly.one(F), g)


def _irreducible(F, deg, rng):
    g = F2mPoly.random_monic(deg, F, rng)
    while not poly_is_irreducible(g):
        g = F2mPoly.random_monic(deg, F, rng)
    return g


def test_irreducibility_against_root_count():
    # degree 2 and 3 polynomials are irreducible exactly when they have no root
    F = field(3)
    rng = Rng(5)
    for _ in range(100):
        deg = 2 + int(rng.below(2))
        g = F2mPoly.random_monic(deg, F, rng)
        has_root = any(poly_eval(g, a) == 0 for a in range(8))
        assert poly_is_irreducible(g) == (not has_root)


def test_sqrt_exhaustive_gf4_deg2():
    F = field(2)
    rng = Rng(1)
    g = _irreducible(F, 2, rng)
    for c0, c1 in itertools.product(range(4), repeat=2):
        h = F2mPoly([c0, c1], F)
        assert poly_sqrt_mod(poly_mulmod(h, h, g), g) == h


def test_sqrt_gf8_deg4():
    F = field(3)
    g = _irreducible(F, 4, Rng(7))
    for coeffs in itertools.product(range(8), repeat=4):
        h = F2mPoly(list(coeffs), F)
        assert poly_sqrt_mod(poly_mulmod(h, h, g), g) == h


def test_inverse_mod():
    F = field(5)
    rng = Rng(3)
    g = _irreducible(F, 6, rng)
    for _ in range(30):
        p = F2mPoly([int(rng.below(32)) for _ in range(6)], F)
        if (p % g).is_zero():
            continue
        assert poly_mulmod(p, poly_inv_mod(p, g), g) == F2mPoly.one(F)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 15), max_size=8), st.lists(st.integers(0, 15), max_size=8))
def test_poly_degree_multiplicative(a, b):
    F = field(4)
    p, q = F2mPoly(a, F), F2mPoly(b, F)
    if p.is_zero() or q.is_zero():
        assert (p * q).is_zero()
    else:
        assert (p * q).deg == p.deg + q.deg
    if not q.is_zero():
        quo, rem = p.divmod(q)
        assert quo * q + rem == p and (rem.is_zero() or rem.deg < q.deg)
