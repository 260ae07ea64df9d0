"""The Freudenthal space P^C = J^C + J^C + C + C.

Real coordinates (112): X (27 real parts, 27 imaginary parts), Y (same),
xi (re, im), eta (re, im).  Complex coordinates (56) are X, Y, xi, eta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import cforms
from .jordan import DIM_J, gamma_operator, metric_diag, sigma_operator
from .linalg.operator import LinearOperator
from .linalg.ratmat import RatMat

DIM_PC = 112


def _jc_complex(X) -> np.ndarray:
    """A J^C element given as 27 complex numbers, 27 reals, 54 reals, or Jordan types."""
    from .jordan import JordanElement, jordan_c_coords
    from .scalars import Complexified

    if X is None:
        return np.zeros(DIM_J, dtype=complex)
    if isinstance(X, Complexified):
        c = np.array([float(v) for v in jordan_c_coords(X)])
        return c[:DIM_J] + 1j * c[DIM_J:]
    if isinstance(X, JordanElement):
        return np.array([float(v) for v in X.coords()], dtype=complex)
    a = np.asarray(X)
    if a.size == 2 * DIM_J and not np.iscomplexobj(a):
        a = a.astype(float)
        return a[:DIM_J] + 1j * a[DIM_J:]
    if a.size == DIM_J:
        return a.astype(complex)
    raise ValueError("not a J^C element")


@dataclass(frozen=True)
class FreudenthalVector:
    """A point of P^C stored as 112 real coordinates (floats or Fractions)."""

    coords: tuple

    def __post_init__(self):
        if len(self.coords) != DIM_PC:
            raise ValueError(f"expected {DIM_PC} real coordinates, got {len(self.coords)}")

    @classmethod
    def from_coords(cls, c: Sequence) -> "FreudenthalVector":
        return cls(tuple(c))

    @classmethod
    def from_parts(cls, X=None, Y=None, xi=0, eta=0) -> "FreudenthalVector":
        z = np.concatenate([_jc_complex(X), _jc_complex(Y), [complex(xi), complex(eta)]])
        return cls(tuple(cforms.complex_to_pc_vec(z)))

    @classmethod
    def exact_parts(cls, X=None, Y=None, xi=(0, 0), eta=(0, 0)) -> "FreudenthalVector":
        """Exact constructor: X and Y as (real27, imag27) pairs of rationals, scalars as (re, im)."""
        def jc(p):
            if p is None:
                return [Fraction(0)] * (2 * DIM_J)
            re, im = p
            re = list(re) if re is not None else [0] * DIM_J
            im = list(im) if im is not None else [0] * DIM_J
            return [Fraction(v) for v in re] + [Fraction(v) for v in im]
        c = jc(X) + jc(Y) + [Fraction(v) for v in xi] + [Fraction(v) for v in eta]
        return cls(tuple(c))

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.coords)

    def array(self) -> np.ndarray:
        return np.array([float(v) for v in self.coords])

    def complex(self) -> np.ndarray:
        """56 complex coordinates (X, Y, xi, eta)."""
        return cforms.pc_vec_to_complex(self.array())

    def parts(self):
        z = self.complex()
        return z[:DIM_J], z[DIM_J:2 * DIM_J], z[54], z[55]

    def __add__(self, o: "FreudenthalVector") -> "FreudenthalVector":
        return FreudenthalVector(tuple(a + b for a, b in zip(self.coords, o.coords)))

    def __sub__(self, o: "FreudenthalVector") -> "FreudenthalVector":
        return FreudenthalVector(tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __neg__(self) -> "FreudenthalVector":
        return FreudenthalVector(tuple(-a for a in self.coords))

    def scale(self, s) -> "FreudenthalVector":
        """Multiply by a real or complex scalar."""
        if isinstance(s, complex):
            return FreudenthalVector.from_coords(cforms.complex_to_pc_vec(self.complex() * s))
        return FreudenthalVector(tuple(s * a for a in self.coords))

    def apply(self, op: LinearOperator) -> "FreudenthalVector":
        if op.basis != "PC":
            raise ValueError("operator must act on P^C")
        if self.exact and op.exact:
            return FreudenthalVector(tuple(op.apply(np.array(self.coords, dtype=object))))
        return FreudenthalVector(tuple(op.dense() @ self.array()))

    def distance(self, o: "FreudenthalVector") -> float:
        return float(np.max(np.abs(self.array() - o.array())))

    def __eq__(self, o) -> bool:
        return isinstance(o, FreudenthalVector) and tuple(self.coords) == tuple(o.coords)

    def __hash__(self):
        return hash(self.coords)


def _ej(k: int) -> list[int]:
    v = [0] * DIM_J
    v[k] = 1
    return v


def F1_dot(h: Sequence) -> FreudenthalVector:
    """(F1(h), 0, 0, 0) for an octonion h given by 8 real coordinates."""
    re = [0] * DIM_J
    for j, c in enumerate(h):
        re[3 + j] = c
    return FreudenthalVector.exact_parts((re, None))


def E1_tilde() -> FreudenthalVector:
    """(0, E1, 0, 1)."""
    return FreudenthalVector.exact_parts(None, (_ej(0), None), (0, 0), (1, 0))


def E_minus1_tilde() -> FreudenthalVector:
    """(0, E1, 0, -1)."""
    return FreudenthalVector.exact_parts(None, (_ej(0), None), (0, 0), (-1, 0))


def E23_dot() -> FreudenthalVector:
    """(E2 + E3, 0, 0, 0)."""
    return FreudenthalVector.exact_parts(([0, 1, 1] + [0] * 24, None))


def distinguished_points() -> dict:
    """The stabilized points; F1(h e4) and F1(h) for the four quaternion units h."""
    pts = {"E1~": E1_tilde(), "E-1~": E_minus1_tilde(), "E23.": E23_dot()}
    for k in range(4):
        h = [0] * 8
        h[k] = 1
        pts[f"F1.(e{k})"] = F1_dot(h)
        he4 = [0] * 8
        he4[4 + k] = 1
        pts[f"F1.(e{k}e4)"] = F1_dot(he4)
    return pts


def herm_inner(P: FreudenthalVector, Q: FreudenthalVector) -> complex:
    """<P, Q> = (tau X, Z) + (tau Y, W) + (tau xi) zeta + (tau eta) omega."""
    g = metric_diag().astype(float)
    X, Y, xi, eta = P.parts()
    Z, W, zeta, om = Q.parts()
    return complex(np.sum(g * np.conj(X) * Z) + np.sum(g * np.conj(Y) * W) + np.conj(xi) * zeta + np.conj(eta) * om)


def skew_form(P: FreudenthalVector, Q: FreudenthalVector) -> complex:
    """{P, Q} = (X, W) - (Z, Y) + xi omega - zeta eta."""
    g = metric_diag().astype(float)
    X, Y, xi, eta = P.parts()
    Z, W, zeta, om = Q.parts()
    return complex(np.sum(g * X * W) - np.sum(g * Z * Y) + xi * om - zeta * eta)


def lambda_operator(exact: bool = True, sign: int = 1) -> LinearOperator:
    """lambda(X, Y, xi, eta) = (Y, -X, eta, -xi); ``sign=-1`` gives the opposite convention."""
    M = np.zeros((DIM_PC, DIM_PC), dtype=np.int64)
    n = 2 * DIM_J
    for i in range(n):
        M[i, n + i] = sign
        M[n + i, i] = -sign
    M[108, 110] = M[109, 111] = sign
    M[110, 108] = M[111, 109] = -sign
    return LinearOperator(RatMat(M) if exact else M.astype(float), "PC")


def lambda_map(P: FreudenthalVector) -> FreudenthalVector:
    return P.apply(lambda_operator(P.exact))


def sigma_pc(exact: bool = True) -> LinearOperator:
    """sigma acting as (sigma X, sigma Y, xi, eta)."""
    return sigma_operator("PC", exact)


def gamma_pc(exact: bool = True) -> LinearOperator:
    return gamma_operator("PC", exact)


# ---------------------------------------------------------------------------
# the V-spaces
# ---------------------------------------------------------------------------

V_TAGS = ("V6", "V7", "V8")
V_DIMS = {"V6": 6, "V7": 7, "V8": 8}


class VSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class VSpacePoint:
    """A point of V6, V7 or V8 by its parameters.

    V6: X = [[0,0,0],[0,xi,h],[0,conj h,-tau xi]], Y = 0, 0, 0.
    V7: V6 plus Y = i eta E1 and last coordinate -i eta, eta real.
    V8: V6 plus Y = eta E1 and last coordinate tau eta, eta complex.
    """

    tag: str
    xi: complex
    h: tuple
    eta: complex = 0j

    def __post_init__(self):
        if self.tag not in V_TAGS:
            raise VSpaceError(f"unknown V-space {self.tag!r}")
        if len(self.h) != 4:
            raise VSpaceError("h is a quaternion (4 real coordinates)")
        if self.tag == "V6" and self.eta != 0:
            raise VSpaceError("V6 points have no eta parameter")
        if self.tag == "V7" and complex(self.eta).imag != 0:
            raise VSpaceError("V7 takes a real eta")

    def params(self) -> np.ndarray:
        """Real parameter vector (length 6, 7 or 8)."""
        base = [complex(self.xi).real, complex(self.xi).imag, *map(float, self.h)]
        if self.tag == "V7":
            base.append(complex(self.eta).real)
        elif self.tag == "V8":
            base += [complex(self.eta).real, complex(self.eta).imag]
        return np.array(base)

    @classmethod
    def from_params(cls, tag: str, v: Sequence[float]) -> "VSpacePoint":
        v = list(v)
        if len(v) != V_DIMS.get(tag, -1):
            raise VSpaceError(f"{tag} has {V_DIMS.get(tag)} real parameters")
        xi = complex(v[0], v[1])
        h = tuple(v[2:6])
        eta = 0j
        if tag == "V7":
            eta = complex(v[6], 0)
        elif tag == "V8":
            eta = complex(v[6], v[7])
        return cls(tag, xi, h, eta)

    def embed(self) -> FreudenthalVector:
        X = np.zeros(DIM_J, dtype=complex)
        X[1] = self.xi
        X[2] = -np.conj(self.xi)
        X[3:7] = self.h
        Y = np.zeros(DIM_J, dtype=complex)
        last = 0j
        if self.tag == "V7":
            Y[0] = 1j * self.eta
            last = -1j * self.eta
        elif self.tag == "V8":
            Y[0] = self.eta
            last = np.conj(self.eta)
        return FreudenthalVector.from_parts(X, Y, 0, last)

    def mu_norm(self) -> float:
        return mu_norm(self)


def mu_norm(P: VSpacePoint) -> float:
    """(tau xi) xi + conj(h) h, plus eta^2 (V7) or (tau eta) eta (V8)."""
    if not isinstance(P, VSpacePoint):
        raise VSpaceError("mu_norm needs a tagged V-space point")
    val = abs(P.xi) ** 2 + sum(float(c) ** 2 for c in P.h)
    if P.tag == "V7":
        val += complex(P.eta).real ** 2
    elif P.tag == "V8":
        val += abs(P.eta) ** 2
    return float(val)


def project(P: FreudenthalVector, tag: str, tol: float = 1e-9) -> VSpacePoint:
    """Read the parameters back from an embedded point; fails if P is not in the V-space."""
    X, Y, xi, eta = P.parts()
    if tag == "V6":
        e = 0j
    elif tag == "V7":
        e = complex((-1j * Y[0]).real, 0)
    else:
        e = complex(Y[0])
    pt = VSpacePoint(tag, complex(X[1]), tuple(float(c.real) for c in X[3:7]), e)
    if P.distance(pt.embed()) > tol:
        raise VSpaceError(f"point is not in {tag} (deviation {P.distance(pt.embed()):.3g})")
    return pt


def sample_sphere(tag: str, seed: int) -> VSpacePoint:
    """Seeded Gaussian point scaled to mu-norm 1."""
    if tag not in V_TAGS:
        raise VSpaceError(f"unknown V-space {tag!r}")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(V_DIMS[tag])
    v = v / np.linalg.norm(v)
    return VSpacePoint.from_params(tag, v)
