"""Quaternions, octonions and their complexifications.

Scalars are plain Python numbers: ``fractions.Fraction``/``int`` for the exact
backend, ``float`` for the float backend.  The complexification unit ``i`` is
never one of the imaginary units e1..e7; a complexified object is a pair
``(re, im)`` of real objects, see :class:`Complexified`.

Octonions are built as ``O = H + H e4`` with

    (m1 + a1 e4)(m2 + a2 e4) = (m1 m2 - conj(a2) a1) + (a2 m1 + a1 conj(m2)) e4

and the coordinate order ``(1, e1, e2, e3, e4, e5, e6, e7)`` where
``e5 = e1 e4, e6 = e2 e4, e7 = e3 e4``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence

Scalar = Any  # int | Fraction | float

EXACT_TYPES = (int, Fraction)


def is_exact(x: Scalar) -> bool:
    return isinstance(x, EXACT_TYPES)


class Quaternion:
    """q = c0 + c1 e1 + c2 e2 + c3 e3 with e1 e2 = e3."""

    __slots__ = ("c",)

    def __init__(self, c0: Scalar = 0, c1: Scalar = 0, c2: Scalar = 0, c3: Scalar = 0):
        self.c = (c0, c1, c2, c3)

    @classmethod
    def from_coords(cls, c: Sequence[Scalar]) -> "Quaternion":
        return cls(*c)

    @classmethod
    def unit(cls, k: int) -> "Quaternion":
        c = [0, 0, 0, 0]
        c[k] = 1
        return cls(*c)

    def coords(self) -> tuple:
        return self.c

    def __add__(self, o: "Quaternion") -> "Quaternion":
        a, b = self.c, o.c
        return Quaternion(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    def __sub__(self, o: "Quaternion") -> "Quaternion":
        a, b = self.c, o.c
        return Quaternion(a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])

    def __neg__(self) -> "Quaternion":
        a = self.c
        return Quaternion(-a[0], -a[1], -a[2], -a[3])

    def __mul__(self, o):
        if not isinstance(o, Quaternion):
            return Quaternion(*(x * o for x in self.c))
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = o.c
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, s):
        return Quaternion(*(s * x for x in self.c))

    def __truediv__(self, s):
        return Quaternion(*(x / s for x in self.c))

    def __eq__(self, o) -> bool:
        return isinstance(o, Quaternion) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self) -> str:
        return f"Quaternion{self.c}"

    def conj(self) -> "Quaternion":
        a = self.c
        return Quaternion(a[0], -a[1], -a[2], -a[3])

    def real(self) -> Scalar:
        return self.c[0]

    def norm2(self) -> Scalar:
        return sum(x * x for x in self.c)

    def inner(self, o: "Quaternion") -> Scalar:
        return sum(x * y for x, y in zip(self.c, o.c))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)


class Octonion:
    """x = m + a e4 with m, a quaternions."""

    __slots__ = ("m", "a")

    def __init__(self, m: Quaternion | None = None, a: Quaternion | None = None):
        self.m = m if m is not None else Quaternion()
        self.a = a if a is not None else Quaternion()

    @classmethod
    def from_coords(cls, c: Sequence[Scalar]) -> "Octonion":
        c = list(c)
        if len(c) != 8:
            raise ValueError("an octonion has 8 coordinates")
        return cls(Quaternion(*c[:4]), Quaternion(*c[4:]))

    @classmethod
    def unit(cls, k: int) -> "Octonion":
        c = [0] * 8
        c[k] = 1
        return cls.from_coords(c)

    @classmethod
    def real_scalar(cls, s: Scalar) -> "Octonion":
        return cls(Quaternion(s))

    def coords(self) -> tuple:
        return self.m.c + self.a.c

    def __add__(self, o: "Octonion") -> "Octonion":
        return Octonion(self.m + o.m, self.a + o.a)

    def __sub__(self, o: "Octonion") -> "Octonion":
        return Octonion(self.m - o.m, self.a - o.a)

    def __neg__(self) -> "Octonion":
        return Octonion(-self.m, -self.a)

    def __mul__(self, o):
        if not isinstance(o, Octonion):
            return Octonion(self.m * o, self.a * o)
        return oct_mul(self, o)

    def __rmul__(self, s):
        return Octonion(s * self.m, s * self.a)

    def __truediv__(self, s):
        return Octonion(self.m / s, self.a / s)

    def __eq__(self, o) -> bool:
        return isinstance(o, Octonion) and self.m == o.m and self.a == o.a

    def __hash__(self):
        return hash((self.m, self.a))

    def __repr__(self) -> str:
        return f"Octonion{self.coords()}"

    def conj(self) -> "Octonion":
        return oct_conj(self)

    def real(self) -> Scalar:
        return self.m.c[0]

    def norm2(self) -> Scalar:
        return self.m.norm2() + self.a.norm2()

    def is_zero(self) -> bool:
        return self.m.is_zero() and self.a.is_zero()


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    m1, a1, m2, a2 = x.m, x.a, y.m, y.a
    return Octonion(m1 * m2 - a2.conj() * a1, a2 * m1 + a1 * m2.conj())


def oct_conj(x: Octonion) -> Octonion:
    return Octonion(x.m.conj(), -x.a)


def oct_inner(x: Octonion, y: Octonion) -> Scalar:
    """(x, y) = Re(x conj(y)); the standard basis is orthonormal."""
    return x.m.inner(y.m) + x.a.inner(y.a)


def oct_norm(x: Octonion) -> Scalar:
    """|x|; exact for perfect squares, otherwise a float."""
    n2 = x.norm2()
    if is_exact(n2):
        r = _exact_sqrt(Fraction(n2))
        if r is not None:
            return r
    return float(n2) ** 0.5


def _exact_sqrt(q: Fraction) -> Fraction | None:
    from math import isqrt

    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gamma_oct(x: Octonion) -> Octonion:
    """gamma(m + a e4) = m - a e4."""
    return Octonion(x.m, -x.a)


class Complexified:
    """u + i v over a real object type (scalar, quaternion, octonion, Jordan element).

    ``i`` is central and distinct from every imaginary unit of the underlying
    algebra; ``conj`` acts on the algebra part and is C-linear, ``tau`` is the
    complex conjugation u + iv -> u - iv.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        self.re = re
        self.im = im if im is not None else re * 0

    def __add__(self, o):
        o = _lift(o, self)
        return Complexified(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = _lift(o, self)
        return Complexified(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return _lift(o, self) - self

    def __neg__(self):
        return Complexified(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, Complexified):
            return Complexified(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        if isinstance(o, complex):
            return self * Complexified(o.real, o.imag)
        return Complexified(self.re * o, self.im * o)

    def __rmul__(self, o):
        if isinstance(o, complex):
            return Complexified(o.real, o.imag) * self
        return Complexified(o * self.re, o * self.im)

    def __truediv__(self, s):
        return Complexified(self.re / s, self.im / s)

    def __eq__(self, o) -> bool:
        if not isinstance(o, Complexified):
            o = _lift(o, self)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"Complexified({self.re!r}, {self.im!r})"

    def tau(self) -> "Complexified":
        return Complexified(self.re, -self.im)

    def conj(self) -> "Complexified":
        return Complexified(_conj(self.re), _conj(self.im))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def abs2(self):
        """(tau z) z for a complex scalar."""
        return self.re * self.re + self.im * self.im


def _conj(x):
    return x.conj() if hasattr(x, "conj") and not isinstance(x, (int, float, Fraction)) else x


def _lift(o, like: Complexified) -> Complexified:
    if isinstance(o, Complexified):
        return o
    if isinstance(o, complex):
        return Complexified(o.real, o.imag)
    return Complexified(o, like.im * 0)


def cscalar(z) -> Complexified:
    """Make a complex scalar from a Python complex, a real, or a (re, im) pair."""
    if isinstance(z, Complexified):
        return z
    if isinstance(z, complex):
        return Complexified(z.real, z.imag)
    if isinstance(z, tuple):
        return Complexified(*z)
    return Complexified(z, 0)


def tau_conj(x: Complexified) -> Complexified:
    return x.tau()


def gamma_octc(x: Complexified) -> Complexified:
    return Complexified(gamma_oct(x.re), gamma_oct(x.im))


def oct_mul_c(x: Complexified, y: Complexified) -> Complexified:
    return x * y


QuaternionC = Complexified
OctonionC = Complexified
ComplexScalar = Complexified


def octonion_basis() -> list[Octonion]:
    return [Octonion.unit(k) for k in range(8)]


def sum_all(items: Iterable, zero):
    total = zero
    for it in items:
        total = total + it
    return total
