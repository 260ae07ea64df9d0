"""The exceptional Jordan algebra J and its complexification J^C.

An element is stored as ``(xi1, xi2, xi3; x1, x2, x3)`` for the hermitian matrix

    [[xi1,      x3,       conj(x2)],
     [conj(x3), xi2,      x1      ],
     [x2,       conj(x1), xi3     ]]

Coordinate order (27 reals): ``xi1, xi2, xi3, x1[0..7], x2[0..7], x3[0..7]``.
J^C uses 27 real then 27 imaginary coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .scalars import Complexified, Octonion, Quaternion, gamma_oct, oct_inner

DIM_J = 27


def _half(s):
    return Fraction(s, 2) if isinstance(s, int) else s / 2


def _div(s, n):
    return Fraction(s, n) if isinstance(s, int) else s / n


class JordanElement:
    __slots__ = ("xi", "x")

    def __init__(self, xi: Sequence = (0, 0, 0), x: Sequence[Octonion] | None = None):
        self.xi = tuple(xi)
        self.x = tuple(x) if x is not None else (Octonion(), Octonion(), Octonion())

    @classmethod
    def from_coords(cls, c: Sequence) -> "JordanElement":
        c = list(c)
        if len(c) != DIM_J:
            raise ValueError(f"expected {DIM_J} coordinates, got {len(c)}")
        return cls(c[:3], [Octonion.from_coords(c[3 + 8 * k: 11 + 8 * k]) for k in range(3)])

    @classmethod
    def basis(cls, k: int) -> "JordanElement":
        c = [0] * DIM_J
        c[k] = 1
        return cls.from_coords(c)

    def coords(self) -> tuple:
        return self.xi + self.x[0].coords() + self.x[1].coords() + self.x[2].coords()

    def matrix(self) -> list[list[Octonion]]:
        r = Octonion.real_scalar
        (x1, x2, x3), (a, b, c) = self.x, self.xi
        return [[r(a), x3, x2.conj()],
                [x3.conj(), r(b), x1],
                [x2, x1.conj(), r(c)]]

    @classmethod
    def from_matrix(cls, m: list[list[Octonion]]) -> "JordanElement":
        return cls((m[0][0].real(), m[1][1].real(), m[2][2].real()), (m[1][2], m[2][0], m[0][1]))

    def __add__(self, o: "JordanElement") -> "JordanElement":
        return JordanElement([a + b for a, b in zip(self.xi, o.xi)], [a + b for a, b in zip(self.x, o.x)])

    def __sub__(self, o: "JordanElement") -> "JordanElement":
        return JordanElement([a - b for a, b in zip(self.xi, o.xi)], [a - b for a, b in zip(self.x, o.x)])

    def __neg__(self) -> "JordanElement":
        return JordanElement([-a for a in self.xi], [-a for a in self.x])

    def __mul__(self, s) -> "JordanElement":
        return JordanElement([a * s for a in self.xi], [a * s for a in self.x])

    def __rmul__(self, s) -> "JordanElement":
        return self * s

    def __eq__(self, o) -> bool:
        return isinstance(o, JordanElement) and self.coords() == o.coords()

    def __hash__(self):
        return hash(self.coords())

    def __repr__(self) -> str:
        return f"JordanElement(xi={self.xi}, x={self.x})"


def jordan_c_from_coords(c: Sequence) -> Complexified:
    c = list(c)
    return Complexified(JordanElement.from_coords(c[:DIM_J]), JordanElement.from_coords(c[DIM_J:]))


def jordan_c_coords(X: Complexified) -> tuple:
    return X.re.coords() + X.im.coords()


def E(k: int | None = None, scalar=1) -> JordanElement:
    """E_k (k = 1, 2, 3) or the unit E when ``k`` is None."""
    xi = [0, 0, 0]
    if k is None:
        xi = [scalar] * 3
    else:
        xi[k - 1] = scalar
    return JordanElement(xi)


def F(k: int, x: Octonion) -> JordanElement:
    xs = [Octonion(), Octonion(), Octonion()]
    xs[k - 1] = x
    return JordanElement((0, 0, 0), xs)


def _mat_mul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] + A[i][2] * B[2][j] for j in range(3)] for i in range(3)]


def _jordan_mul_real(X: JordanElement, Y: JordanElement) -> JordanElement:
    A, B = X.matrix(), Y.matrix()
    AB, BA = _mat_mul(A, B), _mat_mul(B, A)
    S = [[AB[i][j] + BA[i][j] for j in range(3)] for i in range(3)]
    out = JordanElement.from_matrix(S)
    return JordanElement([_half(s) for s in out.xi],
                         [Octonion.from_coords([_half(s) for s in o.coords()]) for o in out.x])


def jordan_mul(X, Y):
    """X o Y = (XY + YX)/2, complexified bilinearly on J^C."""
    if isinstance(X, Complexified) or isinstance(Y, Complexified):
        X, Y = _as_c(X), _as_c(Y)
        m = _jordan_mul_real
        return Complexified(m(X.re, Y.re) - m(X.im, Y.im), m(X.re, Y.im) + m(X.im, Y.re))
    return _jordan_mul_real(X, Y)


def _as_c(X) -> Complexified:
    return X if isinstance(X, Complexified) else Complexified(X, X * 0)


def trace(X):
    if isinstance(X, Complexified):
        return Complexified(sum(X.re.xi), sum(X.im.xi))
    return sum(X.xi)


def _inner_real(X: JordanElement, Y: JordanElement):
    return sum(a * b for a, b in zip(X.xi, Y.xi)) + 2 * sum(oct_inner(a, b) for a, b in zip(X.x, Y.x))


def inner(X, Y):
    """(X, Y) = tr(X o Y); C-bilinear on J^C."""
    if isinstance(X, Complexified) or isinstance(Y, Complexified):
        X, Y = _as_c(X), _as_c(Y)
        f = _inner_real
        return Complexified(f(X.re, Y.re) - f(X.im, Y.im), f(X.re, Y.im) + f(X.im, Y.re))
    return _inner_real(X, Y)


def cross(X, Y):
    """Freudenthal product X x Y = (1/2)(2 X o Y - tr(X) Y - tr(Y) X + (tr X tr Y - (X, Y)) E)."""
    if isinstance(X, Complexified) or isinstance(Y, Complexified):
        X, Y = _as_c(X), _as_c(Y)
        f = _cross_real
        return Complexified(f(X.re, Y.re) - f(X.im, Y.im), f(X.re, Y.im) + f(X.im, Y.re))
    return _cross_real(X, Y)


def _cross_real(X: JordanElement, Y: JordanElement) -> JordanElement:
    tx, ty = trace(X), trace(Y)
    s = 2 * _jordan_mul_real(X, Y) - Y * tx - X * ty + E(None, tx * ty - _inner_real(X, Y))
    return JordanElement([_half(a) for a in s.xi], [Octonion.from_coords([_half(c) for c in o.coords()]) for o in s.x])


def sigma_J(X):
    """Negate x2 and x3."""
    if isinstance(X, Complexified):
        return Complexified(sigma_J(X.re), sigma_J(X.im))
    x1, x2, x3 = X.x
    return JordanElement(X.xi, (x1, -x2, -x3))


def gamma_J(X):
    """Apply gamma(m + a e4) = m - a e4 to every octonion entry."""
    if isinstance(X, Complexified):
        return Complexified(gamma_J(X.re), gamma_J(X.im))
    return JordanElement(X.xi, [gamma_oct(x) for x in X.x])


@dataclass(frozen=True)
class HSplit:
    """X = M + a in J(3, H) + H^3, from x_k = m_k + a_k e4.

    ``M`` is stored by its hermitian coordinates ``(xi1, xi2, xi3, m1, m2, m3)``.
    """

    xi: tuple
    m: tuple
    a: tuple

    def matrix(self) -> list[list[Quaternion]]:
        r = Quaternion
        (m1, m2, m3), (a, b, c) = self.m, self.xi
        return [[r(a), m3, m2.conj()],
                [m3.conj(), r(b), m1],
                [m2, m1.conj(), r(c)]]

    @classmethod
    def from_matrix(cls, M: list[list[Quaternion]], a: Sequence[Quaternion]) -> "HSplit":
        return cls((M[0][0].real(), M[1][1].real(), M[2][2].real()), (M[1][2], M[2][0], M[0][1]), tuple(a))


def h_split(X: JordanElement) -> HSplit:
    return HSplit(X.xi, tuple(x.m for x in X.x), tuple(x.a for x in X.x))


def h_join(S: HSplit) -> JordanElement:
    return JordanElement(S.xi, [Octonion(m, a) for m, a in zip(S.m, S.a)])


# ---------------------------------------------------------------------------
# structure tensors in the canonical coordinates
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _jordan_tensor_x2() -> np.ndarray:
    """Integer tensor T with 2 (e_a o e_b) = sum_c T[a, b, c] e_c."""
    T = np.zeros((DIM_J, DIM_J, DIM_J), dtype=np.int64)
    basis = [JordanElement.basis(k) for k in range(DIM_J)]
    for a in range(DIM_J):
        for b in range(a, DIM_J):
            prod = _jordan_mul_real(basis[a], basis[b]).coords()
            row = [int(2 * v) for v in prod]
            T[a, b] = row
            T[b, a] = row
    T.setflags(write=False)
    return T


def jordan_tensor(exact: bool = True) -> np.ndarray:
    """T[a, b, c] = coefficient of e_c in e_a o e_b (Fraction objects or floats)."""
    T2 = _jordan_tensor_x2()
    if exact:
        return np.vectorize(lambda v: Fraction(int(v), 2), otypes=[object])(T2)
    return T2 / 2.0


@lru_cache(maxsize=None)
def metric_diag() -> np.ndarray:
    """Diagonal of the Gram matrix of (.,.) in the canonical basis: 1 on E_k, 2 on F_k(e_j)."""
    g = np.full(DIM_J, 2, dtype=np.int64)
    g[:3] = 1
    g.setflags(write=False)
    return g


@lru_cache(maxsize=None)
def unit_coords() -> np.ndarray:
    e = np.zeros(DIM_J, dtype=np.int64)
    e[:3] = 1
    return e


@lru_cache(maxsize=None)
def _cross_tensor_x4() -> np.ndarray:
    """Integer tensor C with 4 (e_a x e_b) = sum_c C[a, b, c] e_c."""
    T2 = _jordan_tensor_x2()
    tr = unit_coords()
    g = metric_diag()
    eye = np.eye(DIM_J, dtype=np.int64)
    C = (2 * T2
         - 2 * tr[:, None, None] * eye[None, :, :]
         - 2 * tr[None, :, None] * eye[:, None, :]
         + 2 * (np.outer(tr, tr) - np.diag(g))[:, :, None] * tr[None, None, :])
    C.setflags(write=False)
    return C


def cross_tensor(exact: bool = True) -> np.ndarray:
    C4 = _cross_tensor_x4()
    if exact:
        return np.vectorize(lambda v: Fraction(int(v), 4), otypes=[object])(C4)
    return C4 / 4.0


# ---------------------------------------------------------------------------
# operators on J and J^C
# ---------------------------------------------------------------------------

def _as_coords(T) -> list:
    if isinstance(T, JordanElement):
        return list(T.coords())
    return list(T)


def _jc_coords(T) -> list:
    if isinstance(T, Complexified):
        return list(jordan_c_coords(T))
    if isinstance(T, JordanElement):
        return list(T.coords()) + [0] * DIM_J
    c = list(T)
    return c if len(c) == 2 * DIM_J else c + [0] * DIM_J


def mult_matrix(T, exact: bool = True):
    """Real 27x27 matrix of X -> T o X for real T (RatMat or float array)."""
    from .linalg.ratmat import RatMat

    t = _as_coords(T)
    T2 = _jordan_tensor_x2()
    if exact:
        fr = [Fraction(x) for x in t]
        den = 1
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = np.array([int(x * den) for x in fr], dtype=np.int64)
        M = np.einsum("a,abc->cb", ints, T2)
        return RatMat(M, 2 * den)
    return np.einsum("a,abc->cb", np.asarray(t, dtype=float), T2) / 2.0


def cross_matrix(T, exact: bool = True):
    """Real 27x27 matrix of X -> T x X for real T."""
    from .linalg.ratmat import RatMat

    t = _as_coords(T)
    C4 = _cross_tensor_x4()
    if exact:
        fr = [Fraction(x) for x in t]
        den = 1
        for x in fr:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = np.array([int(x * den) for x in fr], dtype=np.int64)
        return RatMat(np.einsum("a,abc->cb", ints, C4), 4 * den)
    return np.einsum("a,abc->cb", np.asarray(t, dtype=float), C4) / 4.0


def mult_operator(T, exact: bool = True):
    """The C-linear operator X -> T o X on J^C as a LinearOperator (54x54 real form)."""
    from .cforms import cform
    from .linalg.operator import LinearOperator

    c = _jc_coords(T)
    R, I = mult_matrix(c[:DIM_J], exact), mult_matrix(c[DIM_J:], exact)
    return LinearOperator(cform(R, I), "JC")


def cross_operator_jc(T, exact: bool = True):
    """X -> T x X on J^C (C-bilinear in T and X)."""
    from .cforms import cform

    c = _jc_coords(T)
    return cform(cross_matrix(c[:DIM_J], exact), cross_matrix(c[DIM_J:], exact))


def _diag_operator(signs: np.ndarray, basis: str, exact: bool):
    from .linalg.operator import LinearOperator
    from .linalg.ratmat import RatMat

    reps = {"J": 1, "JC": 2, "PC": 4}[basis]
    d = np.tile(signs, reps)
    if basis == "PC":
        d = np.concatenate([d, np.ones(4, dtype=np.int64)])
    M = np.diag(d).astype(np.int64)
    return LinearOperator(RatMat(M, 1) if exact else M.astype(float), basis)


def sigma_signs() -> np.ndarray:
    s = np.ones(DIM_J, dtype=np.int64)
    s[11:27] = -1
    return s


def gamma_signs() -> np.ndarray:
    s = np.ones(DIM_J, dtype=np.int64)
    for k in range(3):
        s[3 + 8 * k + 4: 3 + 8 * k + 8] = -1
    return s


def sigma_operator(basis: str = "J", exact: bool = True):
    """sigma on J, J^C or P^C (acting on X and Y alike, fixing xi and eta)."""
    return _diag_operator(sigma_signs(), basis, exact)


def gamma_operator(basis: str = "J", exact: bool = True):
    """gamma on J, J^C or P^C (acting on X and Y alike, fixing xi and eta)."""
    return _diag_operator(gamma_signs(), basis, exact)


def traceless_basis() -> list[list[int]]:
    """Integer coordinates of a basis of the traceless real elements of J (26 vectors)."""
    out = []
    for a, b in ((0, 1), (1, 2)):
        v = [0] * DIM_J
        v[a], v[b] = 1, -1
        out.append(v)
    for k in range(3, DIM_J):
        v = [0] * DIM_J
        v[k] = 1
        out.append(v)
    return out
