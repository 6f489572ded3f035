"""Packed GF(2) row vectors and matrices.

Bits live in little-endian 64-bit words: bit ``i`` is bit ``i % 64`` of word
``i // 64``. Pad bits past the logical length are always zero, so word-level
equality, hashing and popcounts need no masking.
"""

from __future__ import annotations

import numpy as np

from .. import _backend
from ..errors import DimensionError, FormatError, NoSolution

_U64 = np.dtype("<u8")


def _nwords(n: int) -> int:
    return (n + 63) >> 6


def _pack_1d(bits, n):
    words = _nwords(n)
    buf = np.zeros(words * 8, dtype=np.uint8)
    if n:
        packed = np.packbits(np.asarray(bits, dtype=np.uint8)[:n], bitorder="little")
        buf[: packed.size] = packed
    return buf.view(_U64).astype(np.uint64, copy=False)


def _pack_2d(bits):
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    words = _nwords(cols)
    buf = np.zeros((rows, words * 8), dtype=np.uint8)
    if cols and rows:
        packed = np.packbits(bits, axis=1, bitorder="little")
        buf[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(buf.view(_U64).astype(np.uint64, copy=False).reshape(rows, words))


def _pad_mask(n):
    r = n & 63
    return np.uint64((1 << r) - 1) if r else None


class BitVector:
    """A length-``n`` vector over GF(2)."""

    __slots__ = ("n", "w")

    def __init__(self, n: int, words=None):
        self.n = int(n)
        if words is None:
            self.w = np.zeros(_nwords(self.n), dtype=np.uint64)
        else:
            w = np.ascontiguousarray(words, dtype=np.uint64)
            if w.shape != (_nwords(self.n),):
                raise DimensionError(f"expected {_nwords(self.n)} words, got {w.shape}")
            self.w = w

    # construction
    @classmethod
    def zeros(cls, n):
        return cls(n)

    @classmethod
    def from_bits(cls, bits):
        arr = np.asarray(bits, dtype=np.uint8).ravel()
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        return cls(arr.size, _pack_1d(arr, arr.size))

    @classmethod
    def from_positions(cls, n, positions):
        arr = np.zeros(n, dtype=np.uint8)
        arr[np.asarray(list(positions), dtype=np.int64)] = 1
        return cls(n, _pack_1d(arr, n))

    @classmethod
    def random(cls, n, rng):
        words = rng.uint64s(_nwords(n)) if n else np.zeros(0, dtype=np.uint64)
        mask = _pad_mask(n)
        if mask is not None:
            words[-1] &= mask
        return cls(n, words)

    @classmethod
    def random_weight(cls, n, w, rng):
        """Uniform element of B(n, w)."""
        return cls.from_positions(n, rng.sample_positions(n, w))

    # views
    def bits(self):
        return np.unpackbits(self.w.view(np.uint8), bitorder="little", count=self.n)

    def support(self):
        return np.flatnonzero(self.bits())

    def weight(self) -> int:
        return int(np.bitwise_count(self.w).sum()) if self.n else 0

    def is_zero(self):
        return not self.w.any()

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BitVector.from_bits(self.bits()[i])
        if i < 0:
            i += self.n
        if not 0 <= i < self.n:
            raise IndexError(i)
        return int((int(self.w[i >> 6]) >> (i & 63)) & 1)

    def __iter__(self):
        return iter(self.bits().tolist())

    def __xor__(self, other):
        if self.n != other.n:
            raise DimensionError(f"length mismatch {self.n} vs {other.n}")
        return BitVector(self.n, self.w ^ other.w)

    def __and__(self, other):
        if self.n != other.n:
            raise DimensionError(f"length mismatch {self.n} vs {other.n}")
        return BitVector(self.n, self.w & other.w)

    def __eq__(self, other):
        return isinstance(other, BitVector) and self.n == other.n and np.array_equal(self.w, other.w)

    def __hash__(self):
        return hash((self.n, self.w.tobytes()))

    def __repr__(self):
        if self.n <= 64:
            return "BitVector(" + "".join(map(str, self.bits().tolist())) + ")"
        return f"BitVector(n={self.n}, weight={self.weight()})"

    def concat(self, other):
        if self.n % 64 == 0:
            return BitVector(self.n + other.n, np.concatenate([self.w, other.w]))
        return BitVector.from_bits(np.concatenate([self.bits(), other.bits()]))

    def split(self, at):
        b = self.bits()
        return BitVector.from_bits(b[:at]), BitVector.from_bits(b[at:])

    def permute(self, perm):
        """Return ``v'`` with ``v'[i] = v[perm[i]]``."""
        perm = np.ascontiguousarray(perm, dtype=np.int64)
        if perm.shape != (self.n,):
            raise DimensionError("permutation length does not match vector")
        return BitVector(self.n, _backend.kernels.permute_bits(self.w, perm, self.n))

    # serialization
    def packed(self) -> bytes:
        """Raw payload, ceil(n/8) bytes, least significant bit first."""
        return self.w.astype(_U64, copy=False).tobytes()[: (self.n + 7) // 8]

    @classmethod
    def from_packed(cls, data: bytes, n: int):
        if len(data) != (n + 7) // 8:
            raise FormatError(f"expected {(n + 7) // 8} bytes for {n} bits, got {len(data)}")
        buf = np.zeros(_nwords(n) * 8, dtype=np.uint8)
        buf[: len(data)] = np.frombuffer(data, dtype=np.uint8)
        words = buf.view(_U64).astype(np.uint64)
        mask = _pad_mask(n)
        if mask is not None and words[-1] & ~mask:
            raise FormatError("nonzero pad bits")
        return cls(n, words)

    def to_bytes(self) -> bytes:
        return self.n.to_bytes(4, "big") + self.packed()

    @classmethod
    def from_bytes(cls, data: bytes, offset=0):
        """Parse a canonical vector; returns ``(vector, new_offset)``."""
        if len(data) < offset + 4:
            raise FormatError("truncated vector header")
        n = int.from_bytes(data[offset : offset + 4], "big")
        end = offset + 4 + (n + 7) // 8
        if len(data) < end:
            raise FormatError("truncated vector payload")
        return cls.from_packed(bytes(data[offset + 4 : end]), n), end


class BitMatrix:
    """Row-major packed matrix over GF(2)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows, self.cols = int(rows), int(cols)
        shape = (self.rows, _nwords(self.cols))
        if data is None:
            self.data = np.zeros(shape, dtype=np.uint64)
        else:
            d = np.ascontiguousarray(data, dtype=np.uint64)
            if d.shape != shape:
                raise DimensionError(f"expected shape {shape}, got {d.shape}")
            self.data = d

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        idx = np.arange(n)
        m.data[idx, idx >> 6] = np.left_shift(np.uint64(1), (idx & 63).astype(np.uint64))
        return m

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.ndim != 2:
            raise DimensionError("need a 2-D array")
        return cls(arr.shape[0], arr.shape[1], _pack_2d(arr))

    @classmethod
    def from_rows(cls, rows_, cols=None):
        rows_ = list(rows_)
        if cols is None:
            if not rows_:
                raise DimensionError("cannot infer width of an empty matrix")
            cols = rows_[0].n
        for r in rows_:
            if r.n != cols:
                raise DimensionError("rows differ in length")
        data = np.stack([r.w for r in rows_]) if rows_ else np.zeros((0, _nwords(cols)), dtype=np.uint64)
        return cls(len(rows_), cols, data)

    @classmethod
    def random(cls, rows, cols, rng):
        words = _nwords(cols)
        data = rng.uint64s(rows * words).reshape(rows, words) if rows and words else np.zeros((rows, words), dtype=np.uint64)
        mask = _pad_mask(cols)
        if mask is not None and rows:
            data[:, -1] &= mask
        return cls(rows, cols, data)

    def to_array(self):
        if self.rows == 0:
            return np.zeros((0, self.cols), dtype=np.uint8)
        return np.unpackbits(self.data.view(np.uint8), axis=1, bitorder="little", count=self.cols)

    def row(self, i):
        return BitVector(self.cols, self.data[i].copy())

    def column(self, j):
        return BitVector.from_bits(self.to_array()[:, j])

    def transpose(self):
        return BitMatrix.from_array(self.to_array().T)

    @property
    def T(self):
        return self.transpose()

    def select_columns(self, cols):
        return BitMatrix.from_array(self.to_array()[:, np.asarray(cols, dtype=np.int64)])

    def permute_columns(self, perm):
        """Column ``j`` of the result is column ``perm[j]`` of ``self``."""
        perm = np.asarray(perm, dtype=np.int64)
        if perm.shape != (self.cols,):
            raise DimensionError("permutation length does not match column count")
        return self.select_columns(perm)

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return BitMatrix(self.rows + other.rows, self.cols, np.vstack([self.data, other.data]))

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionError("row counts differ")
        return BitMatrix.from_array(np.hstack([self.to_array(), other.to_array()]))

    def rank(self):
        return gauss(self)[0]

    def __eq__(self, other):
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"

    def to_bytes(self) -> bytes:
        out = [self.rows.to_bytes(4, "big"), self.cols.to_bytes(4, "big")]
        nbytes = (self.cols + 7) // 8
        raw = self.data.astype(_U64, copy=False)
        if nbytes == raw.shape[1] * 8:
            out.append(raw.tobytes())
        else:
            out.append(raw.view(np.uint8).reshape(self.rows, -1)[:, :nbytes].tobytes())
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes, offset=0):
        if len(data) < offset + 8:
            raise FormatError("truncated matrix header")
        rows = int.from_bytes(data[offset : offset + 4], "big")
        cols = int.from_bytes(data[offset + 4 : offset + 8], "big")
        nbytes = (cols + 7) // 8
        end = offset + 8 + rows * nbytes
        if len(data) < end:
            raise FormatError("truncated matrix payload")
        words = _nwords(cols)
        buf = np.zeros((rows, words * 8), dtype=np.uint8)
        if rows and nbytes:
            buf[:, :nbytes] = np.frombuffer(bytes(data[offset + 8 : end]), dtype=np.uint8).reshape(rows, nbytes)
        mat = np.ascontiguousarray(buf.view(_U64).astype(np.uint64).reshape(rows, words))
        mask = _pad_mask(cols)
        if mask is not None and rows and (mat[:, -1] & ~mask).any():
            raise FormatError("nonzero pad bits")
        return cls(rows, cols, mat), end


def mat_vec_mul(M: BitMatrix, v: BitVector) -> BitVector:
    """``M * v^T`` as a length-``M.rows`` vector."""
    if v.n != M.cols:
        raise DimensionError(f"vector length {v.n} != matrix cols {M.cols}")
    if M.rows == 0:
        return BitVector(0)
    parity = _backend.kernels.matvec(M.data, v.w)
    return BitVector(M.rows, _pack_1d(parity, M.rows))


def vec_mat_mul(v: BitVector, M: BitMatrix) -> BitVector:
    """Row-vector product ``v * M``."""
    if v.n != M.rows:
        raise DimensionError(f"vector length {v.n} != matrix rows {M.rows}")
    return BitVector(M.cols, _backend.kernels.vecmat(v.w, M.data))


def mat_mul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    return BitMatrix(A.rows, B.cols, _backend.kernels.matmul(A.data, B.data))


def gauss(M: BitMatrix):
    """Reduced row echelon form: ``(rank, R, pivots)``.

    ``R`` has the same shape as ``M``; its first ``rank`` rows carry a leading
    one in the listed pivot columns and the remaining rows are zero.
    """
    work = M.data.copy()
    pivots = _backend.kernels.gauss_rref(work, M.cols)
    return len(pivots), BitMatrix(M.rows, M.cols, work), [int(p) for p in pivots]


def inverse(M: BitMatrix) -> BitMatrix:
    if M.rows != M.cols:
        raise DimensionError("only square matrices invert")
    n = M.rows
    aug = M.hstack(BitMatrix.identity(n))
    rank, R, piv = gauss(aug)
    if rank < n or piv[n - 1] != n - 1:
        raise NoSolution("matrix is singular")
    return BitMatrix.from_array(R.to_array()[:, n:])


def random_invertible(k: int, rng) -> BitMatrix:
    """Uniform invertible ``k x k`` matrix by rejection sampling."""
    if k < 1:
        raise ValueError("k must be at least 1")
    while True:
        M = BitMatrix.random(k, k, rng)
        if M.rank() == k:
            return M


class AffineSolver:
    """Reusable solver for ``M * z^T = y^T`` with one elimination up front."""

    def __init__(self, M: BitMatrix):
        self.M = M
        aug = M.hstack(BitMatrix.identity(M.rows))
        _, R, piv = gauss(aug)
        arr = R.to_array()
        self.pivots = [p for p in piv if p < M.cols]
        self.rank = len(self.pivots)
        # left part: reduced M; right part: the row operations applied to it
        self._red = BitMatrix.from_array(arr[: self.rank, : M.cols])
        self._ops = BitMatrix.from_array(arr[:, M.cols :])
        self._free = np.setdiff1d(np.arange(M.cols), np.asarray(self.pivots, dtype=np.int64))

    @property
    def nullity(self):
        return self.M.cols - self.rank

    def solve(self, y: BitVector, rng=None) -> BitVector:
        """Some solution (uniform over all solutions when ``rng`` is given)."""
        if y.n != self.M.rows:
            raise DimensionError(f"rhs length {y.n} != matrix rows {self.M.rows}")
        ty = mat_vec_mul(self._ops, y).bits()
        if ty[self.rank :].any():
            raise NoSolution("right-hand side is outside the column span")
        z = np.zeros(self.M.cols, dtype=np.uint8)
        if rng is not None and self._free.size:
            z[self._free] = BitVector.random(self._free.size, rng).bits()
        if self.rank:
            zf = BitVector.from_bits(z)
            contrib = mat_vec_mul(self._red, zf).bits() if self._free.size else np.zeros(self.rank, np.uint8)
            z[np.asarray(self.pivots)] = ty[: self.rank] ^ contrib
        return BitVector.from_bits(z)


def solve_affine(M: BitMatrix, y: BitVector, rng=None) -> BitVector:
    """A ``z`` with ``M * z^T = y^T``; raises NoSolution when none exists."""
    if y.n != M.rows:
        raise DimensionError(f"rhs length {y.n} != matrix rows {M.rows}")
    return AffineSolver(M).solve(y, rng)


def nullspace(M: BitMatrix) -> BitMatrix:
    """Basis of the right kernel as rows: identity on the free columns."""
    _, R, piv = gauss(M)
    arr = R.to_array()[: len(piv)]
    free = np.setdiff1d(np.arange(M.cols), np.asarray(piv, dtype=np.int64))
    out = np.zeros((free.size, M.cols), dtype=np.uint8)
    out[np.arange(free.size), free] = 1
    if piv:
        out[:, np.asarray(piv)] = arr[:, free].T
    return BitMatrix.from_array(out)
