"""GF(2) linear algebra and GF(2^d) polynomial arithmetic."""

from .bits import (
    AffineSolver,
    BitMatrix,
    BitVector,
    gauss,
    inverse,
    mat_mul,
    mat_vec_mul,
    nullspace,
    random_invertible,
    solve_affine,
    vec_mat_mul,
)
from .field import (
    MODULI,
    F2mElement,
    F2mPoly,
    GF2m,
    f2m_inv,
    f2m_mul,
    f2m_pow,
    field,
    poly_eval,
    poly_gcd_ext,
    poly_inv_mod,
    poly_is_irreducible,
    poly_mulmod,
    poly_powmod,
    poly_sqrt_mod,
)

__all__ = [
    "AffineSolver", "BitMatrix", "BitVector", "gauss", "inverse", "mat_mul",
    "mat_vec_mul", "nullspace", "random_invertible", "solve_affine", "vec_mat_mul",
    "MODULI", "F2mElement", "F2mPoly", "GF2m", "f2m_inv", "f2m_mul", "f2m_pow",
    "field", "poly_eval", "poly_gcd_ext", "poly_inv_mod", "poly_is_irreducible",
    "poly_mulmod", "poly_powmod", "poly_sqrt_mod",
]
