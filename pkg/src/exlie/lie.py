"""Concrete compact Lie algebras f4, e6, e7 as operator spaces.

* f4 = Der(J), found as the exact nullspace of the linearized product rule.
* e6 = f4 + {i T~ : T real traceless}, acting C-linearly on J^C.
* e7 = {Phi(phi, A, -tau A, nu) : phi in e6, A in J^C, nu in iR}, acting on P^C.

All bases are exact (rational entries in the real coordinates documented in
:mod:`exlie.linalg.operator`).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import cforms
from .jordan import (
    DIM_J,
    _jordan_tensor_x2,
    cross_operator_jc,
    gamma_operator,
    metric_diag,
    mult_matrix,
    sigma_operator,
    traceless_basis,
)
from .linalg import exact
from .linalg.operator import LinearOperator
from .linalg.ratmat import RatMat
from .linalg.span import ExactSpan

# ---------------------------------------------------------------------------
# the Phi action on P^C
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiConventions:
    """Constants of the Phi action.

    Phi(phi, A, B, nu)(X, Y, xi, eta) =
        (phi X - c nu X + k B x Y + eta A,
         k A x X + s tphi Y + c nu Y + xi B,
         (A, Y) + nu xi,
         (B, X) - nu eta)
    with ``s = transpose_sign``, ``c = nu_coeff``, ``k = cross_coeff``.
    """

    transpose_sign: int = -1
    nu_coeff: Fraction = Fraction(1, 3)
    cross_coeff: int = 2

    def as_dict(self) -> dict:
        return {"transpose_sign": self.transpose_sign, "nu_coeff": str(self.nu_coeff),
                "cross_coeff": self.cross_coeff}


CONVENTIONS = PhiConventions()


def _vec54(A, exact: bool):
    """Coerce a J^C element to 54 real coordinates (Fractions or floats)."""
    if A is None:
        return [Fraction(0)] * 54 if exact else np.zeros(54)
    from .scalars import Complexified
    from .jordan import JordanElement, jordan_c_coords

    if isinstance(A, Complexified):
        c = list(jordan_c_coords(A))
    elif isinstance(A, JordanElement):
        c = list(A.coords()) + [0] * DIM_J
    else:
        c = list(A)
        if len(c) == DIM_J:
            c = c + [0] * DIM_J
        if len(c) == DIM_J and np.iscomplexobj(np.asarray(c)):
            pass
    if len(c) != 54:
        raise ValueError("a J^C element has 54 real coordinates")
    if exact:
        return [Fraction(x) for x in c]
    return np.asarray(c, dtype=float)


def _nu(nu, exact: bool):
    if nu is None:
        nu = 0
    if isinstance(nu, tuple):
        re, im = nu
    elif isinstance(nu, complex):
        re, im = nu.real, nu.imag
    else:
        from .scalars import Complexified

        if isinstance(nu, Complexified):
            re, im = nu.re, nu.im
        else:
            re, im = nu, 0
    if exact:
        return Fraction(re), Fraction(im)
    return float(re), float(im)


def complex_jc_vector(z: np.ndarray) -> np.ndarray:
    """54 real coordinates of a complex 27-vector."""
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag])


def tau_vec(A):
    """tau on 54 real coordinates: negate the imaginary half."""
    A = list(A)
    return A[:DIM_J] + [-x for x in A[DIM_J:]]


def _metric_mats(exact: bool):
    g = metric_diag()
    if exact:
        return RatMat(np.diag(g).astype(np.int64), 1), RatMat(np.diag(2 // g).astype(np.int64), 2)
    return np.diag(g.astype(float)), np.diag(1.0 / g)


def transpose_jc(phi):
    """Transpose of a C-linear map of J^C with respect to the C-bilinear form (X, Y)."""
    M = phi.mat if isinstance(phi, LinearOperator) else phi
    exact_ = cforms.is_exact(M)
    G, Ginv = _metric_mats(exact_)
    R, I = cforms.c_parts(M)
    out = cforms.cform(Ginv @ R.T @ G, Ginv @ I.T @ G)
    return LinearOperator(out, "JC") if isinstance(phi, LinearOperator) else out


def phi_action(phi=None, A=None, B=None, nu=None, exact: bool | None = None,
               conventions: PhiConventions | None = None) -> LinearOperator:
    """The operator Phi(phi, A, B, nu) on P^C."""
    conv = conventions or CONVENTIONS
    if exact is None:
        exact = phi.exact if isinstance(phi, LinearOperator) else True
    if phi is None:
        phi = LinearOperator.zero("JC", exact)
    if phi.basis != "JC":
        raise ValueError("phi must act on J^C")
    P = phi.mat if exact else phi.dense()
    if exact and not phi.exact:
        raise TypeError("exact Phi needs an exact phi")
    a, b = _vec54(A, exact), _vec54(B, exact)
    n = _nu(nu, exact)
    g = metric_diag()
    s, c, k = conv.transpose_sign, conv.nu_coeff, conv.cross_coeff

    nuI = cforms.complex_scalar_block(n, DIM_J, exact)
    tphi = transpose_jc(P)
    Z = lambda r, q: cforms.zeros((r, q), exact)
    crossB = cforms.scale(cross_operator_jc(b, exact), k)
    crossA = cforms.scale(cross_operator_jc(a, exact), k)
    nu2 = cforms.complex_scalar_block(n, 1, exact)
    rows = [
        [P - cforms.scale(nuI, c), crossB, Z(54, 2), cforms.column_block(a, exact)],
        [crossA, cforms.scale(tphi, s) + cforms.scale(nuI, c), cforms.column_block(b, exact), Z(54, 2)],
        [Z(2, 54), cforms.row_block(a, g, exact), nu2, Z(2, 2)],
        [cforms.row_block(b, g, exact), Z(2, 54), Z(2, 2), -nu2],
    ]
    return LinearOperator(cforms.assemble(rows, exact), "PC")


def compact_e7_element(phi=None, A=None, nu_im=0, exact: bool | None = None) -> LinearOperator:
    """Phi(phi, A, -tau A, i nu_im), the shape of every element of compact e7."""
    if exact is None:
        exact = phi.exact if isinstance(phi, LinearOperator) else True
    a = _vec54(A, exact)
    b = [-x for x in tau_vec(a)] if exact else -np.asarray(tau_vec(a), dtype=float)
    return phi_action(phi, a, b, (0, nu_im), exact=exact)


def vee(X, W, exact: bool = True) -> LinearOperator:
    """X v W = [X~, W~] + (X o W - (1/3)(X, W) E)~ on J^C."""
    x, w = _vec54(X, exact), _vec54(W, exact)
    Mx, Mw = _mult_c(x, exact), _mult_c(w, exact)
    comm = Mx @ Mw - Mw @ Mx
    prod = _jordan_mul_c(x, w, exact)
    ip = _inner_c(x, w, exact)
    e = _unit54(exact)
    third = Fraction(1, 3) if exact else 1.0 / 3
    t = [p - third * (ip[0] * e[i]) for i, p in enumerate(prod[:DIM_J])] + \
        [p - third * (ip[1] * e[i]) for i, p in enumerate(prod[DIM_J:])]
    return LinearOperator(comm + _mult_c(t, exact), "JC")


def _unit54(exact: bool):
    e = [1, 1, 1] + [0] * 24
    return [Fraction(v) for v in e] if exact else np.array(e, dtype=float)


def _mult_c(v, exact: bool):
    return cforms.cform(mult_matrix(list(v[:DIM_J]), exact), mult_matrix(list(v[DIM_J:]), exact))


def _jordan_mul_c(x, w, exact: bool):
    """Complex Jordan product on 54 real coordinates."""
    M = _mult_c(x, exact)
    if exact:
        return list(M.to_fractions() @ np.array(w, dtype=object))
    return M @ np.asarray(w, dtype=float)


def _inner_c(x, w, exact: bool):
    g = metric_diag()
    xr, xi, wr, wi = x[:DIM_J], x[DIM_J:], w[:DIM_J], w[DIM_J:]
    re = sum(int(gg) * (a * b - c * d) for gg, a, b, c, d in zip(g, xr, wr, xi, wi))
    im = sum(int(gg) * (a * d + c * b) for gg, a, b, c, d in zip(g, xr, wr, xi, wi))
    return re, im


def cross_pq(P, Q, exact: bool = False) -> LinearOperator:
    """The C-linear map P x Q of P^C.

    P x Q = Phi(-(1/2)(X v W + Z v Y), -(1/4)(2 Y x W - xi Z - zeta X),
                (1/4)(2 X x Z - eta W - omega Y), (1/8)((X, W) + (Z, Y) - 3(xi omega + zeta eta)))
    for P = (X, Y, xi, eta) and Q = (Z, W, zeta, omega).
    """
    from .freudenthal import FreudenthalVector

    p = P if isinstance(P, FreudenthalVector) else FreudenthalVector.from_coords(P)
    q = Q if isinstance(Q, FreudenthalVector) else FreudenthalVector.from_coords(Q)
    return _cross_pq_complex(p.complex(), q.complex())


def _cross_pq_complex(p: np.ndarray, q: np.ndarray) -> LinearOperator:
    X, Y, xi, eta = p[:27], p[27:54], p[54], p[55]
    Z, W, zeta, om = q[:27], q[27:54], q[54], q[55]
    g = metric_diag().astype(float)
    ip = lambda u, v: np.sum(g * u * v)
    phi = -0.5 * (_vee_complex(X, W) + _vee_complex(Z, Y))
    A = -0.25 * (2 * _cross_complex(Y, W) - xi * Z - zeta * X)
    B = 0.25 * (2 * _cross_complex(X, Z) - eta * W - om * Y)
    nu = 0.125 * (ip(X, W) + ip(Z, Y) - 3 * (xi * om + zeta * eta))
    return phi_action(LinearOperator(cforms.complex_to_jc_real(phi), "JC"),
                      complex_jc_vector(A), complex_jc_vector(B), complex(nu), exact=False)


@lru_cache(maxsize=None)
def _tensors_float():
    from .jordan import _cross_tensor_x4

    return _jordan_tensor_x2() / 2.0, _cross_tensor_x4() / 4.0


def _mult_complex(x: np.ndarray) -> np.ndarray:
    T, _ = _tensors_float()
    return np.einsum("a,abc->cb", x, T)


def _cross_complex(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    _, C = _tensors_float()
    return np.einsum("a,b,abc->c", x, y, C)


def _vee_complex(X: np.ndarray, W: np.ndarray) -> np.ndarray:
    MX, MW = _mult_complex(X), _mult_complex(W)
    g = metric_diag().astype(float)
    prod = MX @ W
    ip = np.sum(g * X * W)
    e = np.zeros(27)
    e[:3] = 1
    return MX @ MW - MW @ MX + _mult_complex(prod - ip / 3.0 * e)


# ---------------------------------------------------------------------------
# f4 = Der(J)
# ---------------------------------------------------------------------------


def derivation_system() -> list[dict[int, int]]:
    """Sparse integer rows of D(e_i o e_j) - D e_i o e_j - e_i o D e_j = 0 (i <= j).

    Unknown D[a, b] (coefficient of e_a in D e_b) has index a * 27 + b.
    """
    T2 = _jordan_tensor_x2()
    n = DIM_J
    nz = {(i, j): [(k, int(T2[i, j, k])) for k in np.flatnonzero(T2[i, j])] for i in range(n) for j in range(n)}
    col = {(a, c): [(x, int(T2[a, x, c])) for x in np.flatnonzero(T2[a, :, c])] for a in range(n) for c in range(n)}
    rows = []
    for i in range(n):
        for j in range(i, n):
            for c in range(n):
                r: dict[int, int] = {}
                for k, v in nz[(i, j)]:
                    r[c * n + k] = r.get(c * n + k, 0) + v
                # sum_a D[a, i] T2[a, j, c] and sum_a D[a, j] T2[i, a, c]
                for a, v in col[(j, c)]:
                    r[a * n + i] = r.get(a * n + i, 0) - v
                for a, v in col[(i, c)]:
                    r[a * n + j] = r.get(a * n + j, 0) - v
                r = {k: v for k, v in r.items() if v}
                if r:
                    rows.append(r)
    return rows


@lru_cache(maxsize=None)
def f4_derivation_matrices() -> tuple[RatMat, ...]:
    n = DIM_J
    null = exact.nullspace(derivation_system(), n * n)
    return tuple(RatMat.from_fractions(np.array(v, dtype=object).reshape(n, n)) for v in null)


def f4_derivations() -> "SubalgebraBasis":
    """Der(J) as 27x27 exact operators; the nullspace dimension is computed, not assumed."""
    ops = [LinearOperator(M, "J") for M in f4_derivation_matrices()]
    return SubalgebraBasis(ops, "f4", "Der(J)")


def to_jc(op: LinearOperator) -> LinearOperator:
    """Complexify a real operator on J."""
    M = op.mat
    return LinearOperator(cforms.cform(M, cforms.zeros(M.shape, op.exact)), "JC")


def i_tilde(T, exact: bool = True) -> LinearOperator:
    """The C-linear operator i T~ on J^C for real T (27 coordinates)."""
    M = mult_matrix(list(T), exact)
    return LinearOperator(cforms.cform(cforms.zeros(M.shape, exact), M), "JC")


def tilde(T, exact: bool = True) -> LinearOperator:
    """T~ (X -> T o X) on J^C for complex T (54 coordinates) or real T (27)."""
    v = _vec54(T, exact)
    return LinearOperator(_mult_c(v, exact), "JC")


def a1_tilde_matrix(a: Sequence, exact: bool = True):
    """Real 27x27 matrix of the derivation A~1(a), a an octonion (8 coordinates).

    A~1(a) X = [A1(a), X] for the skew-hermitian A1(a) with a in the (2,3)
    slot and -conj(a) in the (3,2) slot:
        xi2 -> 2(a, x1), xi3 -> -2(a, x1), x1 -> (xi3 - xi2) a,
        x2 -> -conj(x3 a), x3 -> conj(a x2).
    """
    from .jordan import JordanElement
    from .scalars import Octonion, oct_inner

    a_o = Octonion.from_coords([Fraction(v) if exact else float(v) for v in a])
    cols = []
    for b in range(DIM_J):
        X = JordanElement.basis(b)
        x1, x2, x3 = X.x
        xi1, xi2, xi3 = X.xi
        ip = oct_inner(a_o, x1)
        new = JordanElement((0, 2 * ip, -2 * ip), (a_o * (xi3 - xi2), -(x3 * a_o).conj(), (a_o * x2).conj()))
        cols.append(list(new.coords()))
    M = np.array(cols, dtype=object).T
    return RatMat.from_fractions(M) if exact else M.astype(float)


def a1_tilde(a: Sequence, exact: bool = True) -> LinearOperator:
    return LinearOperator(a1_tilde_matrix(a, exact), "J")


@lru_cache(maxsize=None)
def _d4_data():
    """Basis of d4 = {delta in Der(J) : delta E_i = 0} and the x1-blocks of its elements."""
    ders = f4_derivation_matrices()
    # columns 0..2 (images of E1, E2, E3) must vanish
    rows = []
    for r in range(DIM_J):
        for c in range(3):
            row = {k: int(M.num[r, c]) * (1 if True else 0) for k, M in enumerate(ders) if M.num[r, c]}
            # scale by denominators: M = num / den
            row = {k: Fraction(int(ders[k].num[r, c]), ders[k].den) for k in row}
            if row:
                rows.append(row)
    null = exact.nullspace(rows, len(ders))
    d4 = []
    for v in null:
        acc = RatMat.zeros((DIM_J, DIM_J))
        for k, coef in enumerate(v):
            if coef:
                acc = acc + ders[k].scale(coef)
        d4.append(acc)
    blocks = [M[3:11, 3:11] for M in d4]
    span = ExactSpan(blocks)
    return tuple(d4), span


def so8_lift(D) -> RatMat:
    """The element of d4 acting as the antisymmetric 8x8 matrix D on the x1 slot."""
    d4, span = _d4_data()
    D = RatMat.from_fractions(np.asarray(D, dtype=object)) if not isinstance(D, RatMat) else D
    coords = span.coordinates([D])[0]
    acc = RatMat.zeros((DIM_J, DIM_J))
    for k, coef in zip(span.selected, coords):
        if coef:
            acc = acc + d4[k].scale(coef)
    return acc


def so_basis(indices: Sequence[int]) -> list[np.ndarray]:
    """E_ij - E_ji (i < j in ``indices``) as 8x8 integer matrices."""
    out = []
    for i, j in itertools.combinations(indices, 2):
        D = np.zeros((8, 8), dtype=np.int64)
        D[j, i], D[i, j] = 1, -1
        out.append(D)
    return out


def d4_ops() -> list[LinearOperator]:
    """D4: so(4) on the quaternion half {1, e1, e2, e3} of x1, lifted to Der(J)."""
    return [LinearOperator(so8_lift(D), "J") for D in so_basis(range(4))]


def d4_prime_ops() -> list[LinearOperator]:
    """D'4: so(4) on the half {e4, e5, e6, e7} of x1, lifted to Der(J)."""
    return [LinearOperator(so8_lift(D), "J") for D in so_basis(range(4, 8))]


# ---------------------------------------------------------------------------
# subalgebra containers
# ---------------------------------------------------------------------------


class ClosureError(ValueError):
    pass


class SubalgebraBasis:
    """A list of exact operators spanning a Lie subalgebra, with a certified span."""

    def __init__(self, ops: Sequence[LinearOperator], ambient: str, label: str = "",
                 metadata: dict | None = None):
        if not ops:
            raise ValueError("empty basis")
        basis = {op.basis for op in ops}
        if len(basis) != 1:
            raise ValueError("mixed basis labels")
        self.ops = list(ops)
        self.ambient = ambient
        self.label = label
        self.metadata = dict(metadata or {})
        self._span = None
        self._structure = None

    @property
    def space(self) -> str:
        return self.ops[0].basis

    @property
    def span(self) -> ExactSpan:
        if self._span is None:
            self._span = ExactSpan(self.ops)
        return self._span

    @property
    def dim(self) -> int:
        return self.span.dim

    def independent(self) -> "SubalgebraBasis":
        """Sub-list of linearly independent operators with the same span."""
        sel = self.span.selected
        if len(sel) == len(self.ops):
            return self
        out = SubalgebraBasis([self.ops[i] for i in sel], self.ambient, self.label, self.metadata)
        return out

    def contains(self, op: LinearOperator) -> bool:
        return self.span.contains(op)

    def coordinates(self, ops: Sequence[LinearOperator]) -> list[list[Fraction]]:
        return self.span.coordinates(ops)

    def basis_ops(self) -> list[LinearOperator]:
        return [self.ops[i] for i in self.span.selected]

    def closure_failures(self, pairs: Sequence[tuple[int, int]] | None = None) -> list[tuple[int, int]]:
        """Index pairs (into :meth:`basis_ops`) whose bracket leaves the span."""
        b = self.basis_ops()
        if pairs is None:
            pairs = [(i, j) for i in range(len(b)) for j in range(i + 1, len(b))]
        return [(i, j) for i, j in pairs if not self.span.contains(b[i].bracket(b[j]))]

    def structure_constants(self) -> np.ndarray:
        """c[i, j, k]: [b_i, b_j] = sum_k c[i, j, k] b_k (exact Fractions, basis_ops order)."""
        if self._structure is None:
            b = self.basis_ops()
            n = len(b)
            C = np.empty((n, n, n), dtype=object)
            C[...] = Fraction(0)
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            brackets = [b[i].bracket(b[j]) for i, j in pairs]
            coords = self.span.coordinates(brackets) if brackets else []
            for (i, j), c in zip(pairs, coords):
                C[i, j, :] = c
                C[j, i, :] = [-x for x in c]
            self._structure = C
        return self._structure

    def to_dict(self) -> dict:
        return {"ambient": self.ambient, "label": self.label, "dim": self.dim, "metadata": self.metadata,
                "operators": [op.to_dict() for op in self.basis_ops()]}

    def __len__(self) -> int:
        return len(self.ops)

    def __repr__(self) -> str:
        return f"SubalgebraBasis({self.label or self.ambient}, {len(self.ops)} ops)"


# ---------------------------------------------------------------------------
# e6 and e7
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _e6_ops() -> tuple[LinearOperator, ...]:
    ders = [to_jc(LinearOperator(M, "J")) for M in f4_derivation_matrices()]
    imag = [i_tilde(T) for T in traceless_basis()]
    return tuple(ders + imag)


def e6_algebra() -> SubalgebraBasis:
    """Compact e6 on J^C: Der(J) plus i T~ for real traceless T."""
    return SubalgebraBasis(list(_e6_ops()), "e6", "e6")


def _unit_jc(k: int, imag: bool = False) -> list[Fraction]:
    v = [Fraction(0)] * 54
    v[k + (DIM_J if imag else 0)] = Fraction(1)
    return v


@lru_cache(maxsize=None)
def _e7_ops() -> tuple[LinearOperator, ...]:
    ops = [compact_e7_element(phi) for phi in _e6_ops()]
    for imag in (False, True):
        for k in range(DIM_J):
            ops.append(compact_e7_element(None, _unit_jc(k, imag)))
    ops.append(compact_e7_element(None, None, 1))
    return tuple(ops)


def e7_algebra() -> SubalgebraBasis:
    return SubalgebraBasis(list(_e7_ops()), "e7", "e7")


def e6_to_e7(phi: LinearOperator) -> LinearOperator:
    return phi_action(phi, None, None, 0, exact=phi.exact)


# ---------------------------------------------------------------------------
# fixed subalgebras
# ---------------------------------------------------------------------------


def _conj(T: LinearOperator, op: LinearOperator) -> LinearOperator:
    # T is an involution, so T^{-1} = T
    return T @ op @ T


def fixed_subalgebra(basis: SubalgebraBasis, involutions: Sequence[LinearOperator]) -> SubalgebraBasis:
    """{x in span : T x T^{-1} = x for every T}, computed exactly."""
    ops = basis.basis_ops()
    n = len(ops)
    rows = []
    for T in involutions:
        I = LinearOperator.identity(T.basis, True)
        if not (T @ T).equals(I):
            raise ValueError("not an involution")
        images = [_conj(T, op) for op in ops]
        try:
            coords = basis.coordinates(images)
        except Exception as exc:  # pragma: no cover - diagnostic path
            raise ValueError("involution does not normalize the span") from exc
        # coords[j] = coordinates of T b_j T; the map on coefficients is M[k, j]
        for k in range(n):
            rows.append({j: coords[j][k] - (1 if j == k else 0) for j in range(n) if coords[j][k] - (1 if j == k else 0)})
    null = exact.nullspace(rows, n)
    fixed = [_combine(ops, v) for v in null]
    label = f"{basis.label}^{{{','.join('T' + str(i) for i in range(len(involutions)))}}}"
    return SubalgebraBasis(fixed, basis.ambient, label)


def _combine(ops: Sequence[LinearOperator], coeffs: Sequence[Fraction]) -> LinearOperator:
    acc = None
    for op, c in zip(ops, coeffs):
        if c:
            term = op.scale(c)
            acc = term if acc is None else acc + term
    return acc if acc is not None else LinearOperator.zero(ops[0].basis, ops[0].exact)


# ---------------------------------------------------------------------------
# the explicit subalgebra families
# ---------------------------------------------------------------------------

FAMILY_IDS = ("L3_2", "L3_6", "L3_10", "L3_14", "L3_18", "L3_20")
FAMILY_DIMS = {"L3_2": 6, "L3_6": 15, "L3_10": 21, "L3_14": 28, "L3_18": 34, "L3_20": 37}


def _jc(real27=None, imag27=None) -> list[Fraction]:
    r = [Fraction(x) for x in (real27 or [0] * DIM_J)]
    i = [Fraction(x) for x in (imag27 or [0] * DIM_J)]
    return r + i


def _jvec(**entries) -> list[int]:
    """Real J coordinates from keywords xi1..xi3 and x1..x3 (8-tuples)."""
    v = [0] * DIM_J
    for key, val in entries.items():
        if key.startswith("xi"):
            v[int(key[2]) - 1] = val
        else:
            k = int(key[1]) - 1
            for j, c in enumerate(val):
                v[3 + 8 * k + j] = c
    return v


def _quat_unit(k: int) -> tuple:
    q = [0] * 8
    q[k] = 1
    return tuple(q)


def _family_generators(fid: str) -> list[tuple[str, LinearOperator]]:
    g: list[tuple[str, LinearOperator]] = []
    E = lambda phi, A=None, nu=0: compact_e7_element(phi, A, nu)
    if fid == "L3_2":
        return [(f"D4'[{i}]", E(to_jc(d))) for i, d in enumerate(d4_prime_ops())]
    # pieces shared by L3_6 onward
    g += [(f"D4[{i}]", E(to_jc(d))) for i, d in enumerate(d4_ops())]
    g += [(f"A1~(e{k})", E(to_jc(a1_tilde(_quat_unit(k))))) for k in range(4)]
    g += [(f"iF1~(e{k})", E(i_tilde(_jvec(x1=_quat_unit(k))))) for k in range(4)]
    if fid in ("L3_6", "L3_10"):
        g.append(("i(E2-E3)~", E(i_tilde(_jvec(xi2=1, xi3=-1)))))
    if fid == "L3_10":
        g.append(("A=E2+E3", E(None, _jc(_jvec(xi2=1, xi3=1)))))
        g.append(("A=i(E2-E3)", E(None, _jc(None, _jvec(xi2=1, xi3=-1)))))
        g += [(f"A=F1(i e{k})", E(None, _jc(None, _jvec(x1=_quat_unit(k))))) for k in range(4)]
    if fid in ("L3_14", "L3_18", "L3_20"):
        # eps = (1, -1, 0) ties nu = -(3/2) i eps1; eps = (0, 1, -1) has nu = 0
        g.append(("i diag(1,-1,0)~", E(i_tilde(_jvec(xi1=1, xi2=-1)), None, Fraction(-3, 2))))
        g.append(("i diag(0,1,-1)~", E(i_tilde(_jvec(xi2=1, xi3=-1)))))
        for k in (2, 3):
            g.append((f"A=E{k}", E(None, _jc(_jvec(**{f"xi{k}": 1})))))
            g.append((f"A=iE{k}", E(None, _jc(None, _jvec(**{f"xi{k}": 1})))))
        g += [(f"A=F1(e{k})", E(None, _jc(_jvec(x1=_quat_unit(k))))) for k in range(4)]
        g += [(f"A=F1(i e{k})", E(None, _jc(None, _jvec(x1=_quat_unit(k))))) for k in range(4)]
    if fid in ("L3_18", "L3_20"):
        g += [(f"D4'[{i}]", E(to_jc(d))) for i, d in enumerate(d4_prime_ops())]
    if fid == "L3_20":
        g.append(("A=E1", E(None, _jc(_jvec(xi1=1)))))
        g.append(("A=iE1", E(None, _jc(None, _jvec(xi1=1)))))
        g.append(("nu=i", E(None, None, 1)))
    return g


def family_fixed_points(fid: str) -> dict:
    """Named points of P^C annihilated by every element of the family."""
    from . import freudenthal as fr

    e = lambda k: [1 if j == k else 0 for j in range(8)]
    pts = {}
    if fid == "L3_2":
        pts.update({f"F1.(e{k})": fr.F1_dot(e(k)) for k in range(4)})
        pts.update({"E1~": fr.E1_tilde(), "E-1~": fr.E_minus1_tilde(), "E23.": fr.E23_dot()})
    elif fid in ("L3_6", "L3_10", "L3_14"):
        pts.update({f"F1.(e{k})": fr.F1_dot(e(k)) for k in range(4, 8)})
        if fid in ("L3_6", "L3_10"):
            pts["E1~"] = fr.E1_tilde()
        if fid == "L3_6":
            pts["E-1~"] = fr.E_minus1_tilde()
    return pts


def su2_generators() -> list[tuple[str, LinearOperator]]:
    """Phi(2 nu E1 v E1, a E1, -tau a E1, nu) for (nu, a) = (i, 0), (0, 1), (0, i), exactly."""
    e1 = _jc(_jvec(xi1=1))
    R, _ = cforms.c_parts(vee(e1, e1).mat)
    phi = LinearOperator(cforms.cform(RatMat.zeros(R.shape), R.scale(2)), "JC")
    return [("nu=i", compact_e7_element(phi, None, 1)),
            ("a=1", compact_e7_element(None, e1)),
            ("a=i", compact_e7_element(None, _jc(None, _jvec(xi1=1))))]


@lru_cache(maxsize=None)
def _family_cached(fid: str) -> SubalgebraBasis:
    gens = _family_generators(fid)
    return SubalgebraBasis([op for _, op in gens], "e7", fid, {"generators": [name for name, _ in gens]})


def family_subalgebra(fid: str) -> SubalgebraBasis:
    if fid not in FAMILY_IDS:
        raise KeyError(f"unknown family {fid!r}; choose from {FAMILY_IDS}")
    return _family_cached(fid)


# ---------------------------------------------------------------------------
# structure invariants
# ---------------------------------------------------------------------------


@dataclass
class StructureInvariants:
    dim: int
    rank: int
    center_dim: int
    derived_dim: int
    killing_signature: tuple  # (negative, zero, positive)
    trace_form_signature: tuple
    centralizer_dims: list = field(default_factory=list)
    ambient_killing_signature: tuple | None = None  # Killing form of the ambient algebra, restricted

    @property
    def killing_negative_definite(self) -> bool:
        return self.killing_signature[1] == 0 and self.killing_signature[2] == 0

    @property
    def compact(self) -> bool:
        """Compact: the trace form of the faithful action is negative definite."""
        return self.trace_form_signature[1] == 0 and self.trace_form_signature[2] == 0

    @property
    def ambient_killing_negative_definite(self) -> bool | None:
        s = self.ambient_killing_signature
        return None if s is None else (s[1] == 0 and s[2] == 0)

    def as_dict(self) -> dict:
        return {"dim": self.dim, "rank": self.rank, "center_dim": self.center_dim, "derived_dim": self.derived_dim,
                "killing_signature": list(self.killing_signature),
                "trace_form_signature": list(self.trace_form_signature),
                "killing_negative_definite": self.killing_negative_definite, "compact": self.compact,
                "centralizer_dims": self.centralizer_dims,
                "ambient_killing_signature": None if self.ambient_killing_signature is None
                else list(self.ambient_killing_signature),
                "ambient_killing_negative_definite": self.ambient_killing_negative_definite}


def _integer_structure(C: np.ndarray) -> np.ndarray:
    """C scaled by a positive common denominator, as an integer array."""
    den = 1
    for c in C.ravel():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _shrink(np.vectorize(lambda c: int(c * den), otypes=[object])(C))


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.size and max(abs(int(x)) for x in a.ravel()) < 2 ** 20:
        return a.astype(np.int64)
    return a


def _ad_matrix(C: np.ndarray, x: Sequence) -> np.ndarray:
    """Matrix of ad_x in the structure-constant basis: column j = [x, b_j]."""
    return np.tensordot(np.asarray(x, dtype=C.dtype), C, axes=(0, 0)).T


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> np.ndarray:
    den = 1
    for r in rows:
        for c in r:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return np.array([[int(c * den) for c in r] for r in rows], dtype=object)


def ambient_killing_inertia(sub: SubalgebraBasis, ambient: SubalgebraBasis) -> tuple[int, int, int]:
    """Inertia of (x, y) -> tr(ad x ad y) on ``ambient``, restricted to ``sub``."""
    amb = ambient.basis_ops()
    ads = []
    for x in sub.basis_ops():
        coords = ambient.coordinates([x.bracket(b) for b in amb])
        ads.append(_integer_rows(coords).T)  # column j = [x, b_j]; one common scale per element
    A = np.stack(ads)
    big = max((abs(int(v)) for v in A.ravel()), default=0)
    if big ** 2 * A.shape[1] ** 2 < 2 ** 62:
        A = A.astype(np.int64)
    K = np.einsum("aij,bji->ab", A, A)
    return exact.inertia(K.astype(object))


def structure_invariants(basis: SubalgebraBasis, seed: int = 0, samples: int = 3,
                         ambient: SubalgebraBasis | None = None) -> StructureInvariants:
    """dim, rank (minimum centralizer dimension over random elements), center, derived
    algebra, and the exact inertia of the Killing form and of the trace form.

    Structure constants and operator matrices are scaled to integers first; this
    multiplies each form by a positive diagonal congruence, so inertia is unchanged.
    """
    C = _integer_structure(basis.structure_constants())
    n = C.shape[0]
    rng = random.Random(seed)
    cent = []
    for _ in range(samples):
        x = [rng.randint(-9, 9) for _ in range(n)]
        cent.append(n - exact.rank(_ad_matrix(C, x).tolist(), n))
    # center: common kernel of all ad_{b_i}
    rows = [{j: int(C[i, j, k]) for j in range(n) if C[i, j, k]} for i in range(n) for k in range(n)]
    rows = [r for r in rows if r]
    center = n - exact.rank(rows, n) if rows else n
    derived = exact.rank(C.reshape(n * n, n).tolist(), n) if n > 1 else 0
    # Killing form: K[i, j] = sum_{a, b} C[i, a, b] C[j, b, a]
    K = np.einsum("iab,jba->ij", C.astype(object), C.astype(object))
    nums = [op.mat.num for op in basis.basis_ops()]
    N = np.array([m.astype(object).ravel() for m in nums])
    NT = np.array([m.T.astype(object).ravel() for m in nums])
    B = N.dot(NT.T)
    amb = ambient_killing_inertia(basis, ambient) if ambient is not None else None
    return StructureInvariants(n, min(cent), center, derived, exact.inertia(K), exact.inertia(B), cent, amb)
