"""Exact linear algebra over the scalar field (rationals or a fixed
cyclotomic order): elimination, kernels, solving, and an incremental
span builder used for rank certificates."""

from __future__ import annotations

from fractions import Fraction

from .scalars import is_zero

__all__ = ["rref", "rank", "kernel", "solve", "invert", "EchelonBasis"]


def _clone(M):
    return [list(row) for row in M]


def rref(M):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    A = _clone(M)
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        lead = A[r][c]
        A[r] = [x / lead for x in A[r]]
        for i in range(len(A)):
            if i != r and not is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(M):
    return len(rref(M)[1])


def kernel(M):
    """Basis of the right kernel {v : M v = 0}, echelonized."""
    if not M:
        return []
    ncols = len(M[0])
    A, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][fc]
        basis.append(v)
    return basis


def solve(M, b):
    """One solution of M x = b, or None if inconsistent."""
    aug = [list(row) + [bv] for row, bv in zip(M, b)]
    A, pivots = rref(aug)
    ncols = len(M[0]) if M else 0
    for row in A:
        if all(is_zero(x) for x in row[:-1]) and not is_zero(row[-1]):
            return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = A[r][-1]
    return x


def invert(M):
    """Inverse of a square matrix, or None if singular."""
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    A, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in A[:n]]


class EchelonBasis:
    """Incremental row space with exact rank, for early-stopping
    span/codimension computations."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}  # pivot column -> reduced row

    def reduce(self, v):
        v = list(v)
        for c in range(self.ncols):
            if not is_zero(v[c]) and c in self.rows:
                f = v[c]
                row = self.rows[c]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v):
        """Insert v; returns True if it enlarged the span."""
        v = self.reduce(v)
        piv = next((c for c in range(self.ncols) if not is_zero(v[c])), None)
        if piv is None:
            return False
        lead = v[piv]
        self.rows[piv] = [x / lead for x in v]
        return True

    def contains(self, v):
        return all(is_zero(x) for x in self.reduce(v))

    @property
    def rank(self):
        return len(self.rows)
