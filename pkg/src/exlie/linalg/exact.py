"""Exact rational elimination.

Rows are kept fraction-free: each stored row is a primitive integer vector
(``dict`` column -> int, gcd of entries 1, leading entry positive).  This keeps
coefficient growth in check on the large, very sparse derivation systems.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

SparseRow = dict  # column -> int (or Fraction before normalisation)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def primitive(row: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational sparse row to a primitive integer row with positive leading entry."""
    items = [(c, Fraction(v)) for c, v in row.items() if v != 0]
    if not items:
        return {}
    den = 1
    for _, v in items:
        den = _lcm(den, v.denominator)
    ints = [(c, int(v * den)) for c, v in items]
    g = 0
    for _, v in ints:
        g = gcd(g, v)
    items = sorted(ints)
    sign = -1 if items[0][1] < 0 else 1
    return {c: sign * v // g for c, v in items}


def primitive_vector(v: Sequence) -> np.ndarray:
    """Dense analogue of :func:`primitive`; returns an int64 array when it fits, else object."""
    fr = [Fraction(x) for x in np.asarray(v, dtype=object).ravel()]
    den = 1
    for x in fr:
        den = _lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        out = ints
    else:
        lead = next(x for x in ints if x != 0)
        s = -1 if lead < 0 else 1
        out = [s * x // g for x in ints]
    return int_array(out).reshape(np.shape(v))


def int_array(values) -> np.ndarray:
    arr = np.array(values, dtype=object)
    if arr.size == 0:
        return arr.astype(np.int64)
    m = max(abs(int(x)) for x in arr.ravel())
    if m < 2 ** 62:
        return arr.astype(np.int64)
    return arr


def dense_to_sparse(row: Sequence) -> dict:
    return {j: v for j, v in enumerate(row) if v != 0}


class SparseEchelon:
    """Incremental fraction-free row echelon form.

    Each pivot row's pivot is its smallest column, so eliminating the leading
    column of an incoming row only introduces larger columns.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, object]) -> dict[int, int]:
        r = primitive(row)
        while r:
            c = min(r)
            p = self.pivots.get(c)
            if p is None:
                return r
            a, b = p[c], r[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: v * fa for k, v in r.items()}
            for k, v in p.items():
                nv = new.get(k, 0) - fb * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            r = primitive(new)
        return r

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; returns True when it raised the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def contains(self, row: Mapping[int, object]) -> bool:
        return not self.reduce(row)

    def rref(self) -> tuple[list[dict[int, Fraction]], list[int]]:
        """Back-substitute to the reduced row echelon form (pivot entries 1)."""
        cols = sorted(self.pivots)
        done: dict[int, dict[int, Fraction]] = {}
        for c in reversed(cols):
            p = self.pivots[c]
            lead = Fraction(p[c])
            row = {k: Fraction(v) / lead for k, v in p.items()}
            for k in [k for k in row if k != c and k in done]:
                f = row[k]
                for kk, vv in done[k].items():
                    nv = row.get(kk, 0) - f * vv
                    if nv:
                        row[kk] = nv
                    else:
                        row.pop(kk, None)
            done[c] = row
        return [done[c] for c in cols], cols


def _rows(M) -> Iterable[dict]:
    if isinstance(M, np.ndarray) or (isinstance(M, (list, tuple)) and M and not isinstance(M[0], Mapping)):
        for row in M:
            yield dense_to_sparse(row)
    else:
        yield from M


def _ncols(M, ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if isinstance(M, np.ndarray):
        return M.shape[1]
    if M and not isinstance(M[0], Mapping):
        return len(M[0])
    raise ValueError("ncols is required for sparse input")


def echelon(M, ncols: int | None = None) -> SparseEchelon:
    ech = SparseEchelon(_ncols(M, ncols))
    for r in _rows(M):
        ech.add(r)
    return ech


def rref(M, ncols: int | None = None) -> tuple[list[dict[int, Fraction]], list[int]]:
    return echelon(M, ncols).rref()


def rank(M, ncols: int | None = None) -> int:
    return echelon(M, ncols).rank


def nullspace(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Right nullspace basis in RREF-canonical form: one vector per free column,
    equal to 1 there and 0 on the other free columns."""
    n = _ncols(M, ncols)
    rows, piv = rref(M, n)
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in zip(rows, piv):
            if f in r:
                v[c] = -r[f]
        basis.append(v)
    return basis


def bareiss_rank_det(M) -> tuple[int, int]:
    """Fraction-free elimination with pivoting on |entry|; returns (rank, det-or-0).

    ``det`` is only meaningful for square full-rank input.
    """
    A = [[Fraction(x) for x in row] for row in np.asarray(M, dtype=object)]
    den = 1
    for row in A:
        for x in row:
            den = _lcm(den, x.denominator)
    A = [[int(x * den) for x in row] for row in A]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    prev = 1
    r = 0
    sign = 1
    for c in range(nc):
        if r == nr:
            break
        best = max(range(r, nr), key=lambda i: abs(A[i][c]))
        if A[best][c] == 0:
            continue
        if best != r:
            A[r], A[best] = A[best], A[r]
            sign = -sign
        piv = A[r][c]
        for i in range(r + 1, nr):
            a = A[i][c]
            A[i] = [(piv * A[i][j] - a * A[r][j]) // prev for j in range(nc)]
        prev = piv
        r += 1
    det = 0
    if nr == nc and r == nr:
        det = Fraction(sign * A[-1][-1], den ** nr)
    return r, det


def inertia(S) -> tuple[int, int, int]:
    """(negative, zero, positive) counts of an exact symmetric matrix, by congruence."""
    A = [[Fraction(x) for x in row] for row in np.asarray(S, dtype=object)]
    n = len(A)
    for i in range(n):
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    neg = pos = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j: diagonal becomes 2 A[i][j]
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        col = [A[k][piv] for k in range(n)]
        for a in active:
            if col[a] == 0:
                continue
            f = col[a] / d
            row_p = A[piv]
            ra = A[a]
            for b in active:
                if row_p[b]:
                    ra[b] -= f * row_p[b]
    return neg, n - neg - pos, pos
