"""Rank, echelon forms and solves modulo word-sized primes.

The primes are below 2**23 so that a dot product of up to 2**17 residues
never overflows int64.  A rank computed modulo p is a lower bound on the
rational rank of an integer matrix, which is what makes it useful as a
certified pre-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Mapping, Sequence

import numpy as np

PRIMES = (8388593, 8388587, 8388581, 8388571, 8388547, 8388539, 8388473, 8388461)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def clear_denominators(M) -> np.ndarray:
    """Scale each row of a rational matrix to integers (rank-preserving).

    Returns an int64 array when entries fit, otherwise an object array of ints.
    """
    A = np.asarray(M, dtype=object)
    if A.ndim == 1:
        A = A[None, :]
    out = np.empty(A.shape, dtype=object)
    for i, row in enumerate(A):
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        out[i] = [int(x * den) for x in fr]
    if out.size and max(abs(int(x)) for x in out.ravel()) < 2 ** 62:
        return out.astype(np.int64)
    return out


def to_residues(A, p: int) -> np.ndarray:
    """Reduce an integer matrix (int64 or object) to int64 residues mod p."""
    if A.dtype == object:
        return np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(A)
    return np.mod(A, p).astype(np.int64)


@dataclass
class ModEchelon:
    """Reduced row echelon form mod p, built one row at a time.

    ``rows`` holds the pivot rows (pivot entry 1, zero in all other pivot
    columns); ``source`` records which input row introduced each pivot; ``T``
    is the transform with ``rows = T @ inputs[source]`` (mod p).
    """

    p: int
    ncols: int
    rows: np.ndarray
    pivots: list
    source: list
    T: np.ndarray

    @classmethod
    def empty(cls, p: int, ncols: int, track: bool = False) -> "ModEchelon":
        return cls(p, ncols, np.zeros((0, ncols), dtype=np.int64), [], [], np.zeros((0, 0), dtype=np.int64) if track else None)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return (residual row, coefficients c) with residual = row - c @ rows (mod p)."""
        p = self.p
        row = np.mod(row, p)
        if not self.pivots:
            return row, np.zeros(0, dtype=np.int64)
        c = row[self.pivots].copy()
        res = np.mod(row - np.mod(c @ self.rows, p), p)
        return res, c

    def add(self, row: np.ndarray, index: int | None = None) -> bool:
        p = self.p
        res, c = self.reduce(row)
        nz = np.flatnonzero(res)
        if nz.size == 0:
            return False
        col = int(nz[0])
        inv = pow(int(res[col]), p - 2, p)
        new = np.mod(res * inv, p)
        if self.T is not None:
            k = len(self.source)
            # new = inv * (input_k - c @ rows) and rows = T @ inputs
            t_new = np.zeros(k + 1, dtype=np.int64)
            if k:
                t_new[:k] = np.mod(-np.mod(c @ self.T, p) * inv, p)
            t_new[k] = inv
            T = np.zeros((k + 1, k + 1), dtype=np.int64)
            T[:k, :k] = self.T
        if self.pivots:
            f = self.rows[:, col].copy()
            self.rows = np.mod(self.rows - np.mod(np.outer(f, new), p), p)
            if self.T is not None:
                T[:k, :] = np.mod(T[:k, :] - np.mod(np.outer(f, t_new), p), p)
        self.rows = np.vstack([self.rows, new[None, :]])
        self.pivots.append(col)
        self.source.append(index if index is not None else len(self.source))
        if self.T is not None:
            T[k, :] = t_new
            self.T = T
        return True


def echelon_mod_p(A, p: int, track: bool = False) -> ModEchelon:
    R = to_residues(np.asarray(A), p) if not isinstance(A, np.ndarray) or A.dtype != np.int64 else np.mod(A, p)
    ech = ModEchelon.empty(p, R.shape[1], track)
    for i, row in enumerate(R):
        ech.add(row, i)
        if ech.rank == R.shape[1]:
            break
    return ech


def sparse_rank_mod_p(rows: Iterable[Mapping[int, int]], p: int) -> int:
    """Rank mod p of sparse integer rows (dict column -> int)."""
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        r = {c: v % p for c, v in r.items() if v % p}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(r[c], p - 2, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[c]
            for k, v in piv.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def modular_rank(M, primes: Sequence[int] = PRIMES[:2], ncols: int | None = None) -> int:
    """Rank of a rational matrix modulo each prime; returns the maximum.

    Denominators are cleared row by row first, so primes dividing a
    denominator are never a problem.  Each modular rank is a lower bound on
    the rational rank; disagreement between primes means some prime was
    unlucky and the maximum is the better bound.
    """
    if isinstance(M, (list, tuple)) and M and isinstance(M[0], Mapping):
        rows = [_clear_sparse(r) for r in M]
        return max(sparse_rank_mod_p(rows, p) for p in primes)
    A = clear_denominators(M) if not (isinstance(M, np.ndarray) and M.dtype == np.int64) else M
    if A.size == 0:
        return 0
    return max(echelon_mod_p(A, p).rank for p in primes)


def _clear_sparse(r: Mapping[int, object]) -> dict[int, int]:
    fr = {c: Fraction(v) for c, v in r.items()}
    den = 1
    for v in fr.values():
        den = den * v.denominator // gcd(den, v.denominator)
    return {c: int(v * den) for c, v in fr.items()}


def inverse_mod_p(S: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of a square int matrix mod p, or None when singular mod p."""
    n = S.shape[0]
    A = np.concatenate([np.mod(S, p).astype(np.int64), np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return None
        r = c + int(nz[0])
        if r != c:
            A[[c, r]] = A[[r, c]]
        A[c] = np.mod(A[c] * pow(int(A[c, c]), p - 2, p), p)
        f = A[:, c].copy()
        f[c] = 0
        A = np.mod(A - np.mod(np.outer(f, A[c]), p), p)
    return A[:, n:]


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Find n/d with n = a d (mod m), |n|, d <= sqrt(m/2)."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def crt_pair(a1: np.ndarray, m1: int, a2: np.ndarray, p: int) -> np.ndarray:
    """Combine residues mod m1 and mod p into residues mod m1 * p (object ints)."""
    inv = pow(m1 % p, p - 2, p)
    out = np.empty(a1.shape, dtype=object)
    flat1, flat2, fo = a1.ravel(), a2.ravel(), out.ravel()
    for i in range(flat1.size):
        x1 = int(flat1[i])
        t = ((int(flat2[i]) - x1) * inv) % p
        fo[i] = x1 + m1 * t
    return out
