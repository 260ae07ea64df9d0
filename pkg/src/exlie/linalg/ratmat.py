"""Exact rational matrices stored as an integer numerator array over one denominator."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

_LIMIT = 2 ** 62
_FLOAT_EXACT = 2 ** 53


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.ravel())
    return int(np.max(np.abs(a)))


def _shrink(a: np.ndarray) -> np.ndarray:
    """Use int64 when every entry fits, otherwise Python ints."""
    if a.dtype == object and _maxabs(a) < _LIMIT:
        return a.astype(np.int64)
    return a


def _widen(a: np.ndarray) -> np.ndarray:
    return a.astype(object) if a.dtype != object else a


def _gcd_array(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        g = 0
        for x in a.ravel():
            g = gcd(g, int(x))
            if g == 1:
                break
        return g
    return int(np.gcd.reduce(np.abs(a).ravel()))


def safe_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product, promoting to Python ints when int64 could overflow."""
    k = a.shape[-1] if a.ndim else 1
    if a.dtype != object and b.dtype != object:
        bound = _maxabs(a) * _maxabs(b) * max(k, 1)
        if bound < _FLOAT_EXACT:
            # every partial sum is an integer below 2**53, so BLAS float64 is exact
            return (a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        if bound < _LIMIT:
            return a @ b
    return _shrink(_widen(a) @ _widen(b))


def safe_mul(a: np.ndarray, s: int) -> np.ndarray:
    if a.dtype != object and abs(s) * _maxabs(a) < _LIMIT:
        return a * s
    return _shrink(_widen(a) * s)


def safe_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _LIMIT:
        return a + b
    return _shrink(_widen(a) + _widen(b))


class RatMat:
    """Exact rational matrix ``num / den`` with ``den > 0`` and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: np.ndarray, den: int = 1, normalize: bool = True):
        num = np.asarray(num)
        if num.dtype != object and not np.issubdtype(num.dtype, np.integer):
            raise TypeError("numerator must be an integer array")
        if num.dtype != object:
            num = num.astype(np.int64)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        if normalize:
            g = gcd(_gcd_array(num), den)
            if g > 1:
                num = num // g
                den //= g
        self.num = _shrink(num)
        self.den = den

    @classmethod
    def from_fractions(cls, entries) -> "RatMat":
        A = np.asarray(entries, dtype=object)
        den = 1
        for x in A.ravel():
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
        num = np.empty(A.shape, dtype=object)
        for idx, x in np.ndenumerate(A):
            num[idx] = int(Fraction(x) * den)
        return cls(num, den)

    @classmethod
    def zeros(cls, shape) -> "RatMat":
        return cls(np.zeros(shape, dtype=np.int64), 1, normalize=False)

    @classmethod
    def identity(cls, n: int) -> "RatMat":
        return cls(np.eye(n, dtype=np.int64), 1, normalize=False)

    @property
    def shape(self):
        return self.num.shape

    def to_fractions(self) -> np.ndarray:
        out = np.empty(self.num.shape, dtype=object)
        for idx, x in np.ndenumerate(self.num):
            out[idx] = Fraction(int(x), self.den)
        return out

    def to_float(self) -> np.ndarray:
        if self.num.dtype == object:
            return np.vectorize(lambda x: float(Fraction(int(x), self.den)), otypes=[float])(self.num)
        return self.num / float(self.den)

    def __getitem__(self, idx) -> "RatMat":
        return RatMat(np.asarray(self.num[idx]), self.den)

    def __add__(self, o: "RatMat") -> "RatMat":
        g = gcd(self.den, o.den)
        a, b = o.den // g, self.den // g
        return RatMat(safe_add(safe_mul(self.num, a), safe_mul(o.num, b)), self.den * a)

    def __neg__(self) -> "RatMat":
        return RatMat(-self.num, self.den, normalize=False)

    def __sub__(self, o: "RatMat") -> "RatMat":
        return self + (-o)

    def scale(self, s) -> "RatMat":
        s = Fraction(s)
        return RatMat(safe_mul(self.num, s.numerator), self.den * s.denominator)

    def __matmul__(self, o: "RatMat") -> "RatMat":
        return RatMat(safe_matmul(self.num, o.num), self.den * o.den)

    @property
    def T(self) -> "RatMat":
        return RatMat(self.num.T.copy(), self.den, normalize=False)

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def __eq__(self, o) -> bool:
        return isinstance(o, RatMat) and self.den == o.den and self.num.shape == o.num.shape and bool(np.all(self.num == o.num))

    def __hash__(self):
        return hash((self.den, self.num.tobytes() if self.num.dtype != object else tuple(self.num.ravel())))

    def __repr__(self) -> str:
        return f"RatMat(shape={self.shape}, den={self.den})"


def block(rows: Sequence[Sequence[RatMat]]) -> RatMat:
    """Assemble a block matrix exactly."""
    den = 1
    for r in rows:
        for m in r:
            den = den * m.den // gcd(den, m.den)
    nums = [[safe_mul(m.num, den // m.den) for m in r] for r in rows]
    if any(n.dtype == object for r in nums for n in r):
        nums = [[_widen(n) for n in r] for r in nums]
    return RatMat(np.block(nums), den)
