"""Sparse matrix kernels for the two scalar backends.

``ExactMatrix`` stores a Gaussian-integer matrix over one common positive
denominator as sorted coordinate lists. Numerators live in ``int64`` arrays
while they provably fit and are promoted to Python integers (``object``
arrays) otherwise, so no operation ever rounds or wraps.

``FloatMatrix`` is a thin wrapper over a complex128 CSR matrix exposing the
same interface.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np
import scipy.sparse as sp

from dualhahn.opalg.scalar import GaussianRational

# int64 numerators are kept strictly below this bound; sums of two such
# values still fit in a signed 64-bit word.
INT_LIMIT = 2**61


def _absmax(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr)
    return int(np.abs(arr).max())


def _gcd_all(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return reduce(math.gcd, (int(x) for x in arr), 0)
    return int(np.gcd.reduce(arr))


def _to_object(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return np.array([int(x) for x in arr], dtype=object)


def _fits(*bounds: int) -> bool:
    return all(b < INT_LIMIT for b in bounds)


class ExactMatrix:
    """Gaussian-rational sparse matrix ``(re + i*im) / den``.

    Invariants: coordinates sorted row-major and unique, no stored zeros,
    ``den > 0`` and ``gcd(den, re, im) == 1``.
    """

    __slots__ = ("shape", "rows", "cols", "re", "im", "den")

    def __init__(self, shape, rows, cols, re, im, den=1, *, canonical=False):
        self.shape = (int(shape[0]), int(shape[1]))
        self.rows = np.asarray(rows, dtype=np.int64)
        self.cols = np.asarray(cols, dtype=np.int64)
        self.re = re
        self.im = im
        self.den = int(den)
        if not canonical:
            self._canonicalize()

    # -- construction -----------------------------------------------------
    @classmethod
    def zeros(cls, shape) -> "ExactMatrix":
        empty = np.zeros(0, dtype=np.int64)
        return cls(shape, empty, empty, empty, empty.copy(), 1, canonical=True)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        idx = np.arange(n, dtype=np.int64)
        return cls((n, n), idx, idx, np.ones(n, dtype=np.int64), np.zeros(n, dtype=np.int64), 1, canonical=True)

    @classmethod
    def selector(cls, n: int, columns: np.ndarray) -> "ExactMatrix":
        """The ``n x len(columns)`` block of the identity."""
        columns = np.asarray(columns, dtype=np.int64)
        k = len(columns)
        return cls((n, k), columns, np.arange(k, dtype=np.int64), np.ones(k, dtype=np.int64),
                   np.zeros(k, dtype=np.int64), 1, canonical=True)

    @classmethod
    def from_entries(cls, shape, entries) -> "ExactMatrix":
        """Build from an iterable of ``(row, col, value)`` with exact values."""
        triples = [(r, c, GaussianRational.coerce(v)) for r, c, v in entries]
        if not triples:
            return cls.zeros(shape)
        den = 1
        for _, _, v in triples:
            den = math.lcm(den, v.re.denominator, v.im.denominator)
        rows = [t[0] for t in triples]
        cols = [t[1] for t in triples]
        re = [int(t[2].re * den) for t in triples]
        im = [int(t[2].im * den) for t in triples]
        return cls(shape, rows, cols, np.array(re, dtype=object), np.array(im, dtype=object), den)

    @classmethod
    def diagonal(cls, values) -> "ExactMatrix":
        values = list(values)
        n = len(values)
        return cls.from_entries((n, n), ((k, k, v) for k, v in enumerate(values)))

    # -- normalization ----------------------------------------------------
    def _canonicalize(self):
        re, im = self.re, self.im
        if not isinstance(re, np.ndarray) or re.dtype != object:
            re = np.asarray(re)
            if re.dtype != object:
                re = re.astype(np.int64)
        if not isinstance(im, np.ndarray) or im.dtype != object:
            im = np.asarray(im)
            if im.dtype != object:
                im = im.astype(np.int64)
        if re.dtype != im.dtype:
            re, im = _to_object(re), _to_object(im)
        rows, cols = self.rows, self.cols
        if rows.size:
            key = rows * self.shape[1] + cols
            if rows.size > 1 and not np.all(key[1:] > key[:-1]):
                order = np.argsort(key, kind="stable")
                key, rows, cols, re, im = key[order], rows[order], cols[order], re[order], im[order]
                starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
                rows, cols = rows[starts], cols[starts]
                re = np.add.reduceat(re, starts)
                im = np.add.reduceat(im, starts)
            keep = (re != 0) | (im != 0)
            if not np.all(keep):
                rows, cols, re, im = rows[keep], cols[keep], re[keep], im[keep]
        den = self.den
        if den <= 0:
            raise ValueError("denominator must be positive")
        if rows.size == 0:
            den = 1
        else:
            g = math.gcd(den, _gcd_all(re), _gcd_all(im))
            if g > 1:
                den //= g
                re = re // g
                im = im // g
        if re.dtype == object and _fits(_absmax(re), _absmax(im)):
            re, im = re.astype(np.int64), im.astype(np.int64)
        self.rows, self.cols, self.re, self.im, self.den = rows, cols, re, im, den

    def _with(self, shape, rows, cols, re, im, den) -> "ExactMatrix":
        return ExactMatrix(shape, rows, cols, re, im, den)

    # -- queries ----------------------------------------------------------
    @property
    def nnz(self) -> int:
        return int(self.rows.size)

    @property
    def is_bigint(self) -> bool:
        return self.re.dtype == object

    def is_zero(self) -> bool:
        return self.rows.size == 0

    def max_abs(self) -> float:
        if self.rows.size == 0:
            return 0.0
        if self.is_bigint:
            return max(abs(complex(Fraction(int(a), self.den), Fraction(int(b), self.den)))
                       for a, b in zip(self.re, self.im))
        mags = np.hypot(self.re.astype(float), self.im.astype(float))
        return float(mags.max() / self.den)

    def entries(self):
        """Yield ``((row, col), GaussianRational)`` in row-major order."""
        for r, c, a, b in zip(self.rows, self.cols, self.re, self.im):
            yield (int(r), int(c)), GaussianRational(Fraction(int(a), self.den), Fraction(int(b), self.den))

    def entry(self, row: int, col: int) -> GaussianRational:
        key = row * self.shape[1] + col
        keys = self.rows * self.shape[1] + self.cols
        pos = int(np.searchsorted(keys, key))
        if pos < keys.size and keys[pos] == key:
            return GaussianRational(Fraction(int(self.re[pos]), self.den), Fraction(int(self.im[pos]), self.den))
        return GaussianRational(0)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        if self.rows.size:
            vals = np.array([complex(Fraction(int(a), self.den), Fraction(int(b), self.den))
                             for a, b in zip(self.re, self.im)]) if self.is_bigint else \
                (self.re.astype(float) + 1j * self.im.astype(float)) / self.den
            out[self.rows, self.cols] = vals
        return out

    def to_float(self) -> "FloatMatrix":
        return FloatMatrix(sp.csr_matrix(self.to_dense()) if self.is_bigint else sp.csr_matrix(
            ((self.re.astype(float) + 1j * self.im.astype(float)) / self.den, (self.rows, self.cols)),
            shape=self.shape))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.den == other.den
                and np.array_equal(self.rows, other.rows) and np.array_equal(self.cols, other.cols)
                and all(int(a) == int(b) for a, b in zip(self.re, other.re))
                and all(int(a) == int(b) for a, b in zip(self.im, other.im)))

    __hash__ = None

    def __repr__(self):
        return f"ExactMatrix(shape={self.shape}, nnz={self.nnz}, den={self.den})"

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return ExactMatrix(self.shape, self.rows, self.cols, -self.re, -self.im, self.den, canonical=True)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        if other.rows.size == 0:
            return self
        if self.rows.size == 0:
            return other
        den = math.lcm(self.den, other.den)
        s, t = den // self.den, den // other.den
        bound = (max(_absmax(self.re), _absmax(self.im)) * s
                 + max(_absmax(other.re), _absmax(other.im)) * t)
        if _fits(bound) and not (self.is_bigint or other.is_bigint):
            re = np.concatenate([self.re * s, other.re * t])
            im = np.concatenate([self.im * s, other.im * t])
        else:
            re = np.concatenate([_to_object(self.re) * s, _to_object(other.re) * t])
            im = np.concatenate([_to_object(self.im) * s, _to_object(other.im) * t])
        return self._with(self.shape, np.concatenate([self.rows, other.rows]),
                          np.concatenate([self.cols, other.cols]), re, im, den)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value) -> "ExactMatrix":
        z = GaussianRational.coerce(value)
        if z.is_zero() or self.rows.size == 0:
            return ExactMatrix.zeros(self.shape)
        d = math.lcm(z.re.denominator, z.im.denominator)
        p, q = int(z.re * d), int(z.im * d)
        bound = max(_absmax(self.re), _absmax(self.im)) * (abs(p) + abs(q))
        re, im = self.re, self.im
        if not _fits(bound) or self.is_bigint:
            re, im = _to_object(re), _to_object(im)
        return self._with(self.shape, self.rows, self.cols, re * p - im * q, re * q + im * p, self.den * d)

    def _csr(self, part: np.ndarray) -> sp.csr_matrix:
        return sp.csr_matrix((part, (self.rows, self.cols)), shape=self.shape, dtype=np.int64)

    def _abs_csr(self) -> sp.csr_matrix:
        mag = np.abs(self.re).astype(float) + np.abs(self.im).astype(float)
        return sp.csr_matrix((mag, (self.rows, self.cols)), shape=self.shape)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        shape = (self.shape[0], other.shape[1])
        if self.rows.size == 0 or other.rows.size == 0:
            return ExactMatrix.zeros(shape)
        den = self.den * other.den
        if not (self.is_bigint or other.is_bigint):
            bound = (self._abs_csr() @ other._abs_csr()).max()
            # float rounding is relative 1e-16; the margin below INT_LIMIT absorbs it
            if bound < INT_LIMIT / 4:
                return self._matmul_int64(other, shape, den)
        return self._matmul_object(other, shape, den)

    def _matmul_int64(self, other, shape, den):
        ar, br = self._csr(self.re), other._csr(other.re)
        a_has_im, b_has_im = bool(np.any(self.im)), bool(np.any(other.im))
        parts_re = [ar @ br]
        parts_im = []
        if a_has_im:
            ai = self._csr(self.im)
            parts_im.append(ai @ br)
        if b_has_im:
            bi = other._csr(other.im)
            parts_im.append(ar @ bi)
        if a_has_im and b_has_im:
            parts_re.append(-(ai @ bi))
        rows, cols, re, im = [], [], [], []
        for m, is_re in [(p, True) for p in parts_re] + [(p, False) for p in parts_im]:
            coo = m.tocoo()
            rows.append(coo.row.astype(np.int64))
            cols.append(coo.col.astype(np.int64))
            vals = coo.data.astype(np.int64)
            re.append(vals if is_re else np.zeros_like(vals))
            im.append(np.zeros_like(vals) if is_re else vals)
        return self._with(shape, np.concatenate(rows), np.concatenate(cols),
                          np.concatenate(re), np.concatenate(im), den)

    def _matmul_object(self, other, shape, den):
        # expand every product a_ik * b_kj, then merge duplicates
        indptr = np.searchsorted(other.rows, np.arange(other.shape[0] + 1))
        starts = indptr[self.cols]
        counts = indptr[self.cols + 1] - starts
        total = int(counts.sum())
        if total == 0:
            return ExactMatrix.zeros(shape)
        a_idx = np.repeat(np.arange(self.rows.size), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        b_idx = np.repeat(starts, counts) + offsets
        are, aim = _to_object(self.re)[a_idx], _to_object(self.im)[a_idx]
        bre, bim = _to_object(other.re)[b_idx], _to_object(other.im)[b_idx]
        return self._with(shape, self.rows[a_idx], other.cols[b_idx],
                          are * bre - aim * bim, are * bim + aim * bre, den)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        shape = (self.shape[0] * other.shape[0], self.shape[1] * other.shape[1])
        if self.rows.size == 0 or other.rows.size == 0:
            return ExactMatrix.zeros(shape)
        rows = (self.rows[:, None] * other.shape[0] + other.rows[None, :]).ravel()
        cols = (self.cols[:, None] * other.shape[1] + other.cols[None, :]).ravel()
        bound = (max(_absmax(self.re), _absmax(self.im)) * max(_absmax(other.re), _absmax(other.im)) * 2)
        if _fits(bound) and not (self.is_bigint or other.is_bigint):
            ar, ai, br, bi = self.re, self.im, other.re, other.im
        else:
            ar, ai, br, bi = map(_to_object, (self.re, self.im, other.re, other.im))
        re = (ar[:, None] * br[None, :] - ai[:, None] * bi[None, :]).ravel()
        im = (ar[:, None] * bi[None, :] + ai[:, None] * br[None, :]).ravel()
        return self._with(shape, rows, cols, re, im, self.den * other.den)

    def columns(self, idx) -> "ExactMatrix":
        """Sub-matrix of the given (sorted) columns, renumbered 0..len(idx)-1."""
        idx = np.asarray(idx, dtype=np.int64)
        mask = np.isin(self.cols, idx)
        new_cols = np.searchsorted(idx, self.cols[mask])
        return ExactMatrix((self.shape[0], idx.size), self.rows[mask], new_cols,
                           self.re[mask], self.im[mask], self.den)

    def transpose(self) -> "ExactMatrix":
        return self._with((self.shape[1], self.shape[0]), self.cols, self.rows, self.re, self.im, self.den)


class FloatMatrix:
    """complex128 CSR matrix with the :class:`ExactMatrix` interface."""

    __slots__ = ("csr",)

    def __init__(self, csr):
        csr = sp.csr_matrix(csr, dtype=complex)
        csr.eliminate_zeros()
        csr.sort_indices()
        self.csr = csr

    @classmethod
    def zeros(cls, shape):
        return cls(sp.csr_matrix(shape, dtype=complex))

    @classmethod
    def identity(cls, n):
        return cls(sp.identity(n, dtype=complex, format="csr"))

    @classmethod
    def selector(cls, n, columns):
        columns = np.asarray(columns, dtype=np.int64)
        k = columns.size
        return cls(sp.csr_matrix((np.ones(k), (columns, np.arange(k))), shape=(n, k)))

    @classmethod
    def from_entries(cls, shape, entries):
        entries = list(entries)
        if not entries:
            return cls.zeros(shape)
        r, c, v = zip(*entries)
        return cls(sp.csr_matrix((np.array([complex(x) for x in v]), (r, c)), shape=shape))

    @classmethod
    def diagonal(cls, values):
        return cls(sp.diags(np.array([complex(v) for v in values]), format="csr"))

    @property
    def shape(self):
        return self.csr.shape

    @property
    def nnz(self):
        return int(self.csr.nnz)

    @property
    def rows(self):
        return self.csr.tocoo().row.astype(np.int64)

    @property
    def cols(self):
        return self.csr.tocoo().col.astype(np.int64)

    def is_zero(self):
        return self.csr.nnz == 0

    def max_abs(self):
        return float(np.abs(self.csr.data).max()) if self.csr.nnz else 0.0

    def entries(self):
        coo = self.csr.tocoo()
        for r, c, v in zip(coo.row, coo.col, coo.data):
            yield (int(r), int(c)), complex(v)

    def entry(self, row, col):
        return complex(self.csr[row, col])

    def to_dense(self):
        return self.csr.toarray()

    def to_float(self):
        return self

    def __neg__(self):
        return FloatMatrix(-self.csr)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return FloatMatrix(self.csr + other.csr)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return FloatMatrix(self.csr - other.csr)

    def scale(self, value):
        return FloatMatrix(self.csr * complex(value))

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FloatMatrix(self.csr @ other.csr)

    def kron(self, other):
        return FloatMatrix(sp.kron(self.csr, other.csr, format="csr"))

    def columns(self, idx):
        return FloatMatrix(self.csr[:, np.asarray(idx, dtype=np.int64)])

    def transpose(self):
        return FloatMatrix(self.csr.T)

    def __repr__(self):
        return f"FloatMatrix(shape={self.shape}, nnz={self.nnz})"
