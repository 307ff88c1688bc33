"""Exact linear algebra over Q: sparse echelon ranks, Bareiss, RREF, kernels,
plus a modular rank used as an independent fast check."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence

import numpy as np

from .poly import qnorm


class SparseEchelon:
    """Incremental row echelon form over Q with dict rows.

    Columns are arbitrary hashable labels ranked by ``rank_of``; each
    stored pivot row is monic in its smallest column.
    """

    def __init__(self, columns: Sequence[Hashable] = ()):
        self.rank_of: Dict[Hashable, int] = {c: i for i, c in enumerate(columns)}
        self.pivots: Dict[Hashable, Dict[Hashable, object]] = {}

    def _rank(self, c):
        r = self.rank_of.get(c)
        if r is None:
            r = self.rank_of[c] = len(self.rank_of)
        return r

    def reduce(self, row: Mapping[Hashable, object]) -> Dict[Hashable, object]:
        r = {c: v for c, v in row.items() if v}
        for c in r:
            self._rank(c)
        rk = self.rank_of
        while r:
            c = min(r, key=rk.__getitem__)
            piv = self.pivots.get(c)
            if piv is None:
                return r
            f = r[c]
            for k, v in piv.items():
                s = r.get(k, 0) - f * v
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        return r

    def add(self, row: Mapping[Hashable, object]) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r, key=self.rank_of.__getitem__)
        inv = Fraction(1) / r[c]
        self.pivots[c] = {k: qnorm(v * inv) for k, v in r.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def sparse_rank(rows: Iterable[Mapping[Hashable, object]], columns: Sequence[Hashable] = ()) -> int:
    ech = SparseEchelon(columns)
    for row in rows:
        ech.add(row)
    return ech.rank


def _integer_rows(matrix):
    out = []
    for row in matrix:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def bareiss_rank(matrix: Sequence[Sequence]) -> int:
    """Rank by fraction-free Gaussian elimination (rows scaled to integers)."""
    a = _integer_rows(matrix)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            arc = a[r][col]
            row_r, row_p = a[r], a[rank]
            for k in range(col, ncols):
                row_r[k] = (p * row_r[k] - arc * row_p[k]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rref(matrix: Sequence[Sequence]):
    """Reduced row echelon form over Q; returns (rows, pivot_columns)."""
    a = [[Fraction(v) for v in row] for row in matrix]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return [[qnorm(v) for v in row] for row in a[:r]], pivots


def nullspace(matrix: Sequence[Sequence], ncols: int = None) -> List[List]:
    """Basis of {v : matrix v = 0}, one vector per free column."""
    if not matrix:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = qnorm(-row[fc])
        basis.append(v)
    return basis


def matmul(a, b):
    bt = list(zip(*b))
    return [[qnorm(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def is_zero_matrix(a) -> bool:
    return all(not v for row in a for v in row)


PRIMES = (2147483629, 2147483587)


def modular_rank(matrix: Sequence[Sequence], p: int = PRIMES[0]) -> int:
    """Rank of the matrix reduced modulo a prime p < 2^31 (numpy int64).

    Denominators must be invertible mod p; a rank mod p never exceeds the
    rank over Q and agrees with it for all but finitely many p.
    """
    rows = []
    for row in matrix:
        out = []
        for v in row:
            if isinstance(v, Fraction):
                out.append(v.numerator % p * pow(v.denominator % p, -1, p) % p)
            else:
                out.append(int(v) % p)
        rows.append(out)
    if not rows:
        return 0
    a = np.array(rows, dtype=np.int64)
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = np.nonzero(a[rank + 1:, col])[0] + rank + 1
        if below.size:
            f = a[below, col].reshape(-1, 1)
            a[below] = (a[below] - (f * a[rank]) % p) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def sparse_to_dense(rows: Iterable[Mapping[Hashable, object]], columns: Sequence[Hashable]):
    idx = {c: i for i, c in enumerate(columns)}
    out = []
    for r in rows:
        v = [0] * len(columns)
        for c, x in r.items():
            v[idx[c]] = x
        out.append(v)
    return out
