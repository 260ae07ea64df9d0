"""Certified exact spans of rational vectors.

A span is built by selecting independent vectors modulo a prime (a rank
lower bound) and then proving that every remaining vector is an exact
rational combination of the selected ones (the matching upper bound).
Coordinates are found modulo primes, lifted by rational reconstruction and
always verified with exact integer arithmetic before being returned.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .modular import PRIMES, ModEchelon, crt_pair, inverse_mod_p, rational_reconstruct, to_residues
from .operator import LinearOperator
from .ratmat import RatMat, safe_matmul


class NotAnInvolution(ValueError):
    pass


class NotInSpan(ValueError):
    pass


def as_vector(v) -> tuple[np.ndarray, Fraction]:
    """Return (primitive integer vector, scale) with ``v = scale * vector``."""
    if isinstance(v, LinearOperator):
        if not v.exact:
            raise TypeError("exact span needs exact operators")
        v = v.mat
    if isinstance(v, RatMat):
        num = v.num.ravel()
        g = 0
        for x in (num.tolist() if num.dtype != object else num):
            g = gcd(g, int(x))
            if g == 1:
                break
        if g == 0:
            return num.astype(np.int64) if num.dtype != object else num, Fraction(0)
        return (num // g), Fraction(g, v.den)
    arr = np.asarray(v)
    if arr.dtype != object and np.issubdtype(arr.dtype, np.integer):
        return as_vector(RatMat(arr.ravel(), 1))
    return as_vector(RatMat.from_fractions(arr.ravel()))


def _stack(vs: Sequence[np.ndarray]) -> np.ndarray:
    if any(v.dtype == object for v in vs):
        return np.array([list(map(int, v)) for v in vs], dtype=object)
    return np.stack(vs).astype(np.int64)


class ExactSpan:
    """Span of a list of rational vectors (or exact operators, flattened)."""

    def __init__(self, vectors: Iterable, primes: Sequence[int] = PRIMES):
        vs = [as_vector(v) for v in vectors]
        self.primes = tuple(primes)
        if not vs:
            raise ValueError("empty list of vectors")
        self.ncols = vs[0][0].size
        self.inputs = _stack([v for v, _ in vs])
        self.scales = [s for _, s in vs]
        self._build()

    # -- construction -----------------------------------------------------
    def _build(self):
        for attempt, p in enumerate(self.primes[:3]):
            ech = ModEchelon.empty(p, self.ncols, track=True)
            R = to_residues(self.inputs, p)
            for i, row in enumerate(R):
                ech.add(row, i)
            self.p = p
            self.selected = list(ech.source)
            self.pivots = list(ech.pivots)
            self.B = self.inputs[self.selected]
            self._tinv = {p: ech.T}
            rest = [i for i in range(len(self.inputs)) if i not in set(self.selected)]
            if not rest:
                self.certified = True
                return
            coords = self._coords_int(self.inputs[rest])
            if coords is not None:
                self.certified = True
                return
        self._build_exact()

    def _build_exact(self):
        """Fallback: fraction-free elimination decides independence."""
        ech = exact.SparseEchelon(self.ncols)
        self.selected = [i for i, row in enumerate(self.inputs) if ech.add(exact.dense_to_sparse(list(map(int, row))))]
        self.B = self.inputs[self.selected]
        S = None
        for p in self.primes:
            e = ModEchelon.empty(p, self.ncols, track=True)
            for row in to_residues(self.B, p):
                e.add(row)
            if e.rank == len(self.selected):
                S = e
                break
        if S is None:
            raise RuntimeError("no prime keeps the selected vectors independent")
        self.p = S.p
        self.pivots = list(S.pivots)
        self._tinv = {S.p: S.T}
        self.certified = True

    # -- basic data -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.selected)

    def basis_vectors(self) -> list[np.ndarray]:
        """Selected input vectors as Fraction arrays in their original scaling."""
        out = []
        for i in self.selected:
            s = self.scales[i]
            out.append(np.array([Fraction(int(x)) * s for x in self.inputs[i]], dtype=object))
        return out

    def _residues_B(self) -> np.ndarray:
        if getattr(self, "_Bp", None) is None:
            self._Bp = to_residues(self.B, self.p)
        return self._Bp

    def _tinv_mod(self, p: int) -> np.ndarray | None:
        if p not in self._tinv:
            S = to_residues(self.B[:, self.pivots], p)
            self._tinv[p] = inverse_mod_p(S, p)
        return self._tinv[p]

    # -- coordinates --------------------------------------------------------
    def _coords_int(self, V: np.ndarray) -> list[list[Fraction]] | None:
        """Exact coordinates of integer rows V on the integer basis B, or None."""
        if len(V) == 0:
            return []
        m = 1
        acc = None
        for p in self.primes:
            T = self._tinv_mod(p)
            if T is None:
                continue
            Vp = to_residues(V[:, self.pivots], p)
            Cp = np.mod(Vp @ T, p)
            if acc is None:
                acc, m = Cp.astype(object), p
            else:
                acc, m = crt_pair(acc, m, Cp, p), m * p
            coords = self._lift(acc, m)
            if coords is not None and self._verify(V, coords):
                return coords
        return None

    @staticmethod
    def _lift(acc: np.ndarray, m: int) -> list[list[Fraction]] | None:
        out = []
        for row in acc:
            r = []
            for x in row:
                f = rational_reconstruct(int(x), m)
                if f is None:
                    return None
                r.append(f)
            out.append(r)
        return out

    def _verify(self, V: np.ndarray, coords: list[list[Fraction]]) -> bool:
        dens = []
        nums = []
        for row in coords:
            d = 1
            for f in row:
                d = d * f.denominator // gcd(d, f.denominator)
            dens.append(d)
            nums.append([int(f * d) for f in row])
        C = np.array(nums, dtype=object)
        if max((abs(x) for x in C.ravel()), default=0) < 2 ** 62:
            C = C.astype(np.int64)
        lhs = safe_matmul(C, self.B)
        vmax = int(np.max(np.abs(V))) if V.dtype != object else max(abs(int(x)) for x in V.ravel())
        if V.dtype != object and lhs.dtype != object and vmax * max(dens) < 2 ** 62:
            return bool(np.array_equal(lhs, V * np.array(dens, dtype=np.int64)[:, None]))
        D = np.array(dens, dtype=object)
        rhs = V.astype(object) * D[:, None]
        return bool(np.all(np.asarray(lhs, dtype=object) == rhs))

    def contains(self, v) -> bool:
        vec, _ = as_vector(v)
        if vec.size != self.ncols:
            raise ValueError("dimension mismatch")
        if not np.any(vec != 0):
            return True
        # a nonzero residual mod p certifies v is outside the rational span
        T = self._tinv_mod(self.p)
        vp = to_residues(vec[None, :], self.p)
        Bp = self._residues_B()
        c = np.mod(vp[:, self.pivots] @ T, self.p)
        if np.any(np.mod(vp - np.mod(c @ Bp, self.p), self.p)):
            return False
        if self._coords_int(vec[None, :]) is not None:
            return True
        ech = exact.SparseEchelon(self.ncols)
        for row in self.B:
            ech.add(exact.dense_to_sparse(list(map(int, row))))
        return ech.contains(exact.dense_to_sparse(list(map(int, vec))))

    def coordinates(self, vectors: Iterable) -> list[list[Fraction]]:
        """Exact coordinates of each vector on :meth:`basis_vectors`.

        Raises :class:`NotInSpan` if some vector is not in the span.
        """
        vs = [as_vector(v) for v in vectors]
        if not vs:
            return []
        V = _stack([v for v, _ in vs])
        C = self._coords_int(V)
        if C is None:
            C = self._coords_exact(V)
        out = []
        for (_, s), row in zip(vs, C):
            out.append([c * s / self.scales[i] for c, i in zip(row, self.selected)])
        return out

    def _coords_exact(self, V: np.ndarray) -> list[list[Fraction]]:
        r = self.dim
        cols = r + len(V)
        # solve c B = v on all coordinates: columns of B^T and V^T side by side
        rows = []
        for j in range(self.ncols):
            row = {i: int(self.B[i, j]) for i in range(r) if self.B[i, j]}
            for k in range(len(V)):
                if V[k, j]:
                    row[r + k] = int(V[k, j])
            if row:
                rows.append(row)
        R, piv = exact.rref(rows, cols)
        if any(c >= r for c in piv):
            raise NotInSpan("vector not in span")
        out = []
        for k in range(len(V)):
            c = [Fraction(0)] * r
            for rr, pc in zip(R, piv):
                c[pc] = rr.get(r + k, Fraction(0))
            out.append(c)
        return out


def in_span(v, A: Sequence) -> bool:
    return ExactSpan(A).contains(v)


def span_equal(A: Sequence, B: Sequence) -> bool:
    SA, SB = ExactSpan(A), ExactSpan(B)
    if SA.dim != SB.dim:
        return False
    return all(SA.contains(v) for v in SB.basis_vectors())


def exact_rank(vectors: Sequence) -> int:
    return ExactSpan(vectors).dim


def eigenspace_involution(T, sign: int = 1) -> list[list[Fraction]]:
    """Exact basis of {v : T v = sign v} for an exact involution T."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if isinstance(T, LinearOperator):
        T = T.mat
    if not isinstance(T, RatMat):
        T = RatMat.from_fractions(T)
    n = T.shape[0]
    I = RatMat.identity(n)
    if not (T @ T) == I:
        raise NotAnInvolution("not an involution")
    M = T - I.scale(sign)
    return exact.nullspace([exact.dense_to_sparse(list(map(int, row))) for row in M.num], n)
