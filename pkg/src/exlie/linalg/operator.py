"""Dense square operators over an exact-rational or float backend.

Operators always act in the real coordinates of their space:

* ``J``   27 coordinates ``xi1, xi2, xi3, x1[8], x2[8], x3[8]``;
* ``JC``  54 coordinates, the 27 real parts then the 27 imaginary parts;
* ``PC``  112 coordinates, ``X`` (54), ``Y`` (54), ``xi`` (re, im), ``eta`` (re, im).

A C-linear map is stored through its real form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .ratmat import RatMat

BASIS_DIMS = {"J": 27, "JC": 54, "PC": 112}


class BasisMismatch(ValueError):
    pass


@dataclass(frozen=True)
class LinearOperator:
    mat: Any  # RatMat (exact) or float ndarray
    basis: str

    def __post_init__(self):
        n = BASIS_DIMS.get(self.basis)
        if n is None:
            raise ValueError(f"unknown basis label {self.basis!r}")
        if tuple(self.mat.shape) != (n, n):
            raise ValueError(f"{self.basis} operators are {n}x{n}, got {self.mat.shape}")

    # -- construction -----------------------------------------------------
    @classmethod
    def identity(cls, basis: str, exact: bool = True) -> "LinearOperator":
        n = BASIS_DIMS[basis]
        return cls(RatMat.identity(n) if exact else np.eye(n), basis)

    @classmethod
    def zero(cls, basis: str, exact: bool = True) -> "LinearOperator":
        n = BASIS_DIMS[basis]
        return cls(RatMat.zeros((n, n)) if exact else np.zeros((n, n)), basis)

    @classmethod
    def from_entries(cls, entries, basis: str, exact: bool = True) -> "LinearOperator":
        if exact:
            return cls(RatMat.from_fractions(entries), basis)
        return cls(np.asarray(entries, dtype=float), basis)

    # -- properties -------------------------------------------------------
    @property
    def exact(self) -> bool:
        return isinstance(self.mat, RatMat)

    @property
    def backend(self) -> str:
        return "exact" if self.exact else "float"

    @property
    def n(self) -> int:
        return BASIS_DIMS[self.basis]

    def to_float(self) -> "LinearOperator":
        return LinearOperator(self.mat.to_float(), self.basis) if self.exact else self

    def dense(self) -> np.ndarray:
        """Float array view (exact operators are converted)."""
        return self.mat.to_float() if self.exact else self.mat

    def _check(self, o: "LinearOperator"):
        if o.basis != self.basis:
            raise BasisMismatch(f"basis {self.basis} vs {o.basis}")

    def _pair(self, o: "LinearOperator"):
        self._check(o)
        if self.exact and o.exact:
            return self.mat, o.mat
        return self.dense(), o.dense()

    # -- algebra ----------------------------------------------------------
    def __matmul__(self, o):
        if isinstance(o, LinearOperator):
            a, b = self._pair(o)
            return LinearOperator(a @ b, self.basis)
        return self.apply(o)

    def __add__(self, o: "LinearOperator") -> "LinearOperator":
        a, b = self._pair(o)
        return LinearOperator(a + b, self.basis)

    def __sub__(self, o: "LinearOperator") -> "LinearOperator":
        a, b = self._pair(o)
        return LinearOperator(a - b, self.basis)

    def __neg__(self) -> "LinearOperator":
        return LinearOperator(-self.mat, self.basis)

    def scale(self, s) -> "LinearOperator":
        if self.exact and isinstance(s, (int, Fraction)):
            return LinearOperator(self.mat.scale(s), self.basis)
        return LinearOperator(self.dense() * float(s), self.basis)

    def __mul__(self, s) -> "LinearOperator":
        return self.scale(s)

    __rmul__ = __mul__

    def bracket(self, o: "LinearOperator") -> "LinearOperator":
        return self @ o - o @ self

    def transpose(self) -> "LinearOperator":
        return LinearOperator(self.mat.T, self.basis)

    def apply(self, v) -> np.ndarray:
        """Apply to a coordinate vector (Fractions stay exact when the operator is exact)."""
        v = np.asarray(v)
        if self.exact and (v.dtype == object or np.issubdtype(v.dtype, np.integer)):
            return self.mat.to_fractions() @ v.astype(object)
        return self.dense() @ v.astype(float)

    def is_zero(self) -> bool:
        return self.mat.is_zero() if self.exact else not np.any(self.mat)

    def equals(self, o: "LinearOperator") -> bool:
        """Exact equality (both operators must be exact)."""
        self._check(o)
        if not (self.exact and o.exact):
            raise TypeError("exact comparison needs two exact operators")
        return self.mat == o.mat

    def residual(self, o: "LinearOperator") -> float:
        """Infinity-norm (max row sum) of the difference, in floats."""
        self._check(o)
        if self.exact and o.exact:
            d = (self.mat - o.mat).to_float()
        else:
            d = self.dense() - o.dense()
        return float(np.max(np.sum(np.abs(d), axis=1))) if d.size else 0.0

    def norm_inf(self) -> float:
        d = self.dense()
        return float(np.max(np.sum(np.abs(d), axis=1)))

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        if self.exact:
            entries = [str(Fraction(int(x), self.mat.den)) for x in self.mat.num.ravel()]
        else:
            entries = [repr(float(x)) for x in self.mat.ravel()]
        return {"backend": self.backend, "dim": self.n, "basis": self.basis, "entries": entries}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearOperator":
        n = int(d["dim"])
        if d["backend"] == "exact":
            vals = np.array([Fraction(s) for s in d["entries"]], dtype=object).reshape(n, n)
            return cls(RatMat.from_fractions(vals), d["basis"])
        return cls(np.array([float(s) for s in d["entries"]]).reshape(n, n), d["basis"])

    def __repr__(self) -> str:
        return f"LinearOperator({self.basis}, {self.backend})"
