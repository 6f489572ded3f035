# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for packed GF(2) linear algebra and GF(2^m) polynomials.

Every function here has a bit-for-bit twin in ``_fallback``; the two are
interchangeable and tested against each other.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def gauss_rref(uint64_t[:, ::1] a, Py_ssize_t ncols):
    """Reduce ``a`` in place to reduced row echelon form; return pivot columns."""
    cdef Py_ssize_t rows = a.shape[0], words = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, w, piv, wc
    cdef uint64_t bit, tmp
    pivots_arr = np.empty(min(rows, ncols), dtype=np.int64)
    cdef int64_t[::1] pivots = pivots_arr
    with nogil:
        for c in range(ncols):
            if r >= rows:
                break
            wc = c >> 6
            bit = (<uint64_t>1) << (c & 63)
            piv = -1
            for i in range(r, rows):
                if a[i, wc] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for w in range(words):
                    tmp = a[r, w]
                    a[r, w] = a[piv, w]
                    a[piv, w] = tmp
            for i in range(rows):
                if i != r and (a[i, wc] & bit):
                    for w in range(wc, words):
                        a[i, w] ^= a[r, w]
            pivots[r] = c
            r += 1
    return pivots_arr[:r].copy()


def vecmat(uint64_t[::1] v, uint64_t[:, ::1] m):
    """XOR of the rows of ``m`` selected by the set bits of ``v``."""
    cdef Py_ssize_t rows = m.shape[0], words = m.shape[1], i, w
    out_arr = np.zeros(words, dtype=np.uint64)
    cdef uint64_t[::1] out = out_arr
    with nogil:
        for i in range(rows):
            if (v[i >> 6] >> (i & 63)) & 1:
                for w in range(words):
                    out[w] ^= m[i, w]
    return out_arr


def matvec(uint64_t[:, ::1] m, uint64_t[::1] v):
    """Row parities of ``m AND v``: the product M * v^T as a 0/1 byte array."""
    cdef Py_ssize_t rows = m.shape[0], words = m.shape[1], i, w
    cdef int acc
    out_arr = np.zeros(rows, dtype=np.uint8)
    cdef cnp.uint8_t[::1] out = out_arr
    with nogil:
        for i in range(rows):
            acc = 0
            for w in range(words):
                acc += __builtin_popcountll(m[i, w] & v[w])
            out[i] = acc & 1
    return out_arr


def matmul(uint64_t[:, ::1] a, uint64_t[:, ::1] b):
    """Packed product A * B where A has ``b.shape[0]`` meaningful columns."""
    cdef Py_ssize_t rows = a.shape[0], inner = b.shape[0], words = b.shape[1]
    cdef Py_ssize_t i, k, w
    out_arr = np.zeros((rows, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] out = out_arr
    with nogil:
        for i in range(rows):
            for k in range(inner):
                if (a[i, k >> 6] >> (k & 63)) & 1:
                    for w in range(words):
                        out[i, w] ^= b[k, w]
    return out_arr


def permute_bits(uint64_t[::1] v, int64_t[::1] perm, Py_ssize_t n):
    """Output bit i is input bit ``perm[i]``."""
    cdef Py_ssize_t i, src
    out_arr = np.zeros(v.shape[0], dtype=np.uint64)
    cdef uint64_t[::1] out = out_arr
    with nogil:
        for i in range(n):
            src = perm[i]
            if (v[src >> 6] >> (src & 63)) & 1:
                out[i >> 6] |= (<uint64_t>1) << (i & 63)
    return out_arr


def fisher_yates(uint64_t[::1] rnd):
    """Shuffle ``0..n-1`` with swap index ``rnd[i] % (i + 1)`` for i = n-1 .. 1."""
    cdef Py_ssize_t n = rnd.shape[0], i, j
    cdef int64_t tmp
    perm_arr = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] perm = perm_arr
    with nogil:
        i = n - 1
        while i > 0:
            j = <Py_ssize_t>(rnd[i] % <uint64_t>(i + 1))
            tmp = perm[i]
            perm[i] = perm[j]
            perm[j] = tmp
            i -= 1
    return perm_arr


cdef inline int64_t _gmul(int64_t a, int64_t b, int64_t[::1] exp, int64_t[::1] log) nogil:
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


def poly_mul(int64_t[::1] a, int64_t[::1] b, int64_t[::1] exp, int64_t[::1] log):
    """Product of two coefficient arrays (lowest degree first), untrimmed."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0], i, j
    if na == 0 or nb == 0:
        return np.zeros(0, dtype=np.int64)
    out_arr = np.zeros(na + nb - 1, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef int64_t la
    with nogil:
        for i in range(na):
            if a[i] == 0:
                continue
            la = log[a[i]]
            for j in range(nb):
                if b[j] != 0:
                    out[i + j] ^= exp[la + log[b[j]]]
    return out_arr


def poly_divmod(int64_t[::1] a, int64_t[::1] b, int64_t[::1] exp, int64_t[::1] log, int64_t order):
    """Quotient and remainder of ``a / b``; ``b`` must be trimmed and nonzero."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0], i, j, shift
    rem_arr = np.array(a, dtype=np.int64, copy=True)
    cdef int64_t[::1] rem = rem_arr
    if na < nb:
        return np.zeros(0, dtype=np.int64), rem_arr
    quot_arr = np.zeros(na - nb + 1, dtype=np.int64)
    cdef int64_t[::1] quot = quot_arr
    cdef int64_t inv_lead_log = (order - log[b[nb - 1]]) % order
    cdef int64_t coef, lc
    with nogil:
        i = na - 1
        while i >= nb - 1:
            if rem[i] != 0:
                shift = i - (nb - 1)
                coef = exp[log[rem[i]] + inv_lead_log]
                quot[shift] = coef
                lc = log[coef]
                for j in range(nb):
                    if b[j] != 0:
                        rem[shift + j] ^= exp[lc + log[b[j]]]
            i -= 1
    return quot_arr, rem_arr[:nb - 1]


def poly_eval_many(int64_t[::1] coeffs, int64_t[::1] points, int64_t[::1] exp, int64_t[::1] log):
    """Horner evaluation of one polynomial at many field points."""
    cdef Py_ssize_t n = points.shape[0], deg = coeffs.shape[0], p, i
    out_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef int64_t acc, x
    with nogil:
        for p in range(n):
            x = points[p]
            acc = 0
            i = deg - 1
            while i >= 0:
                acc = _gmul(acc, x, exp, log) ^ coeffs[i]
                i -= 1
            out[p] = acc
    return out_arr
