"""Pure numpy twins of the compiled kernels in ``_kernels.pyx``.

Same signatures, same outputs, bit for bit. Selected automatically when the
extension module is not built, or forced with ``CODEGS_PURE_PYTHON=1``.
"""

import numpy as np

_ONE = np.uint64(1)


def gauss_rref(a, ncols):
    rows = a.shape[0]
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= rows:
            break
        wc, bit = c >> 6, _ONE << np.uint64(c & 63)
        hits = np.flatnonzero(a[r:, wc] & bit)
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        col = (a[:, wc] & bit) != 0
        col[r] = False
        if col.any():
            a[col, wc:] ^= a[r, wc:]
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def _bits_of(v, count):
    return np.unpackbits(v.view(np.uint8), bitorder="little", count=count).astype(bool)


def vecmat(v, m):
    sel = _bits_of(v, m.shape[0])
    if not sel.any():
        return np.zeros(m.shape[1], dtype=np.uint64)
    return np.bitwise_xor.reduce(m[sel], axis=0)


def matvec(m, v):
    counts = np.bitwise_count(m & v).sum(axis=1, dtype=np.int64)
    return (counts & 1).astype(np.uint8)


def matmul(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = vecmat(a[i], b)
    return out


def permute_bits(v, perm, n):
    bits = np.unpackbits(v.view(np.uint8), bitorder="little", count=n)
    out = np.zeros(v.shape[0] * 8, dtype=np.uint8)
    packed = np.packbits(bits[perm[:n]], bitorder="little")
    out[: packed.size] = packed
    return out.view(np.uint64)


def fisher_yates(rnd):
    n = rnd.shape[0]
    perm = list(range(n))
    rl = rnd.tolist()
    for i in range(n - 1, 0, -1):
        j = rl[i] % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return np.asarray(perm, dtype=np.int64)


def _scale(coef_log, b, exp, log):
    # coef * b elementwise, where coef is given by its discrete log
    out = np.zeros_like(b)
    nz = b != 0
    out[nz] = exp[coef_log + log[b[nz]]]
    return out


def poly_mul(a, b, exp, log):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i in np.flatnonzero(a):
        out[i : i + b.size] ^= _scale(log[a[i]], b, exp, log)
    return out


def poly_divmod(a, b, exp, log, order):
    rem = np.array(a, dtype=np.int64, copy=True)
    b = np.asarray(b, dtype=np.int64)
    na, nb = rem.size, b.size
    if na < nb:
        return np.zeros(0, dtype=np.int64), rem
    quot = np.zeros(na - nb + 1, dtype=np.int64)
    inv_lead_log = (order - log[b[-1]]) % order
    for i in range(na - 1, nb - 2, -1):
        if rem[i] == 0:
            continue
        shift = i - (nb - 1)
        coef = exp[log[rem[i]] + inv_lead_log]
        quot[shift] = coef
        rem[shift : shift + nb] ^= _scale(log[coef], b, exp, log)
    return quot, rem[: nb - 1]


def poly_eval_many(coeffs, points, exp, log):
    points = np.asarray(points, dtype=np.int64)
    acc = np.zeros(points.size, dtype=np.int64)
    nzp = points != 0
    lp = log[np.where(nzp, points, 1)]
    for c in np.asarray(coeffs, dtype=np.int64)[::-1]:
        nz = nzp & (acc != 0)
        prod = np.zeros_like(acc)
        prod[nz] = exp[log[acc[nz]] + lp[nz]]
        acc = prod ^ c
    return acc
