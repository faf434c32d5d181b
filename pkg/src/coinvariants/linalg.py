"""Dense row reduction over F_q on int64 arrays of field codes."""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


class FieldArrays:
    """Vectorized field arithmetic (broadcasting, elementwise)."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.p = field.p
        self.prime = field.r == 1
        if self.prime:
            self.inv_table = np.array([0] + [pow(a, self.p - 2, self.p) for a in range(1, self.p)])
        else:
            self.add_table = field._add
            self.mul_table = field._mul
            self.neg_table = field._neg
            self.inv_table = field._inv

    def sub(self, a, b):
        if self.prime:
            return (a - b) % self.p
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        if self.prime:
            return (a * b) % self.p
        return self.mul_table[a, b]

    def submul(self, a, c, b):
        """a - c * b."""
        if self.prime:
            return (a - c * b) % self.p
        return self.add_table[a, self.neg_table[self.mul_table[c, b]]]

    def inv(self, a):
        return self.inv_table[a]


_ops_cache: dict = {}


def ops_for(field: FieldSpec) -> FieldArrays:
    ops = _ops_cache.get(field)
    if ops is None:
        ops = _ops_cache[field] = FieldArrays(field)
    return ops


def rref(M, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form, scanning columns left to right.

    Returns the nonzero rows and their pivot columns."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2 or A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    ops = ops_for(field)
    nrows, ncols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = int(A[r, c])
        if piv != 1:
            A[r, c:] = ops.mul(int(ops.inv(piv)), A[r, c:])
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            A[others, c:] = ops.submul(A[others, c:], A[others, c][:, None], A[r, c:][None, :])
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, field: FieldSpec) -> int:
    return len(rref(M, field)[1])


def reduce_rows(V: np.ndarray, R: np.ndarray, pivots: list[int], field: FieldSpec) -> np.ndarray:
    """Reduce each row of V against the RREF rows R (zeroing pivot columns)."""
    V = np.asarray(V, dtype=np.int64)
    if not pivots:
        return V.copy()
    ops = ops_for(field)
    coeffs = V[:, pivots]
    if ops.prime:
        p = ops.p
        prod = np.rint(coeffs.astype(np.float64) @ R.astype(np.float64)).astype(np.int64)
        return (V - prod) % p
    out = V.copy()
    for k, c in enumerate(pivots):
        out = ops.submul(out, coeffs[:, k][:, None], R[k][None, :])
    return out


def left_kernel(M, field: FieldSpec) -> np.ndarray:
    """Basis (as rows) of {y : y M = 0}."""
    M = np.asarray(M, dtype=np.int64)
    k = M.shape[0]
    aug = np.concatenate([M, np.eye(k, dtype=np.int64)], axis=1)
    R, pivots = rref(aug, field)
    ncols = M.shape[1]
    rows = [R[i, ncols:] for i, c in enumerate(pivots) if c >= ncols]
    return np.array(rows, dtype=np.int64).reshape(len(rows), k)


def solve_left(B: np.ndarray, V: np.ndarray, field: FieldSpec) -> np.ndarray:
    """X with X B = V for square invertible B (rows of V independent problems)."""
    B = np.asarray(B, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    k = B.shape[0]
    # X B = V  <=>  B^T X^T = V^T; reduce [B^T | V^T]
    aug = np.concatenate([B.T, V.T], axis=1)
    R, pivots = rref(aug, field)
    if pivots[:k] != list(range(k)) or len(pivots) > k:
        raise ValueError("matrix is singular or system inconsistent")
    return R[:k, k:].T.copy()
