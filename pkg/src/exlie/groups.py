"""Group membership tests and the explicit group homomorphisms.

Complex matrices are carried as (real, imaginary) pairs so that maps with
rational arguments (sigma, the kernel elements) are built exactly.
Quaternions are arrays of 4 coordinates; quaternion matrices have shape
(n, n, 4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import cforms
from .freudenthal import FreudenthalVector
from .jordan import DIM_J, _cross_tensor_x4, _jordan_tensor_x2, cross_matrix, metric_diag
from .linalg import exact as exact_la
from .linalg.expm import expm_array
from .linalg.operator import LinearOperator
from .linalg.ratmat import RatMat


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact-or-float complex matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CMat:
    re: np.ndarray
    im: np.ndarray

    @classmethod
    def of(cls, M, exact: bool = False) -> "CMat":
        if isinstance(M, CMat):
            return M
        M = np.asarray(M)
        if exact:
            if np.iscomplexobj(M):
                raise TypeError("exact CMat needs separate real and imaginary parts")
            re = np.vectorize(Fraction, otypes=[object])(M) if M.size else M.astype(object)
            return cls(re, np.full(M.shape, Fraction(0), dtype=object))
        return cls(M.real.astype(float), M.imag.astype(float) if np.iscomplexobj(M) else np.zeros(M.shape))

    @property
    def exact(self) -> bool:
        return self.re.dtype == object

    @property
    def shape(self):
        return self.re.shape

    def __matmul__(self, o: "CMat") -> "CMat":
        return CMat(self.re @ o.re - self.im @ o.im, self.re @ o.im + self.im @ o.re)

    def __add__(self, o: "CMat") -> "CMat":
        return CMat(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "CMat") -> "CMat":
        return CMat(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "CMat":
        return CMat(-self.re, -self.im)

    @property
    def T(self) -> "CMat":
        return CMat(self.re.T, self.im.T)

    @property
    def H(self) -> "CMat":
        """Conjugate transpose."""
        return CMat(self.re.T, -self.im.T)

    def tau(self) -> "CMat":
        return CMat(self.re, -self.im)

    def complex(self) -> np.ndarray:
        return self.re.astype(float) + 1j * self.im.astype(float)

    def block(self, i: int, j: int, n: int = 2) -> "CMat":
        return CMat(self.re[i * n:(i + 1) * n, j * n:(j + 1) * n], self.im[i * n:(i + 1) * n, j * n:(j + 1) * n])


def _zeros(shape, exact: bool):
    if exact:
        return np.full(shape, Fraction(0), dtype=object)
    return np.zeros(shape)


# ---------------------------------------------------------------------------
# k : H^C -> M(2, C) and k_J
# ---------------------------------------------------------------------------

# k(e_j) for j = 0..3 as (real, imaginary) integer parts
_K = [
    (np.array([[1, 0], [0, 1]]), np.array([[0, 0], [0, 0]])),
    (np.array([[0, 0], [0, 0]]), np.array([[1, 0], [0, -1]])),
    (np.array([[0, -1], [1, 0]]), np.array([[0, 0], [0, 0]])),
    (np.array([[0, 0], [0, 0]]), np.array([[0, -1], [-1, 0]])),
]

KJ_CONVENTIONS = ("blockwise", "by-component")
KJ_CONVENTION = "blockwise"


def k_map(h_re: Sequence, h_im: Sequence | None = None) -> CMat:
    """k(h) for h = h_re + i h_im in H^C, each given by 4 real coordinates.

    k(1) = E, k(e1) = diag(i, -i), k(e2) = [[0, -1], [1, 0]], k(e3) = [[0, -i], [-i, 0]],
    extended C-linearly; k is multiplicative and k(conj h) = k(h)^* for real h.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in list(h_re) + list(h_im or []))
    h_im = h_im if h_im is not None else [0] * 4
    re, im = _zeros((2, 2), exact), _zeros((2, 2), exact)
    for j in range(4):
        a, b = (Fraction(h_re[j]), Fraction(h_im[j])) if exact else (float(h_re[j]), float(h_im[j]))
        Kr, Ki = _K[j]
        # (a + i b)(Kr + i Ki)
        re = re + a * Kr - b * Ki
        im = im + a * Ki + b * Kr
    return CMat(re, im)


def k_inverse(M: CMat) -> tuple[list, list]:
    """Inverse of :func:`k_map`: h0 = (1/2) tr M, h_j = -(1/2) tr(k(e_j) M)."""
    half = Fraction(1, 2) if M.exact else 0.5
    out_re, out_im = [], []
    for j in range(4):
        Kr, Ki = _K[j]
        K = CMat(Kr.astype(object) if M.exact else Kr.astype(float), Ki.astype(object) if M.exact else Ki.astype(float))
        P = M if j == 0 else K @ M
        s = half if j == 0 else -half
        out_re.append(s * (P.re[0, 0] + P.re[1, 1]))
        out_im.append(s * (P.im[0, 0] + P.im[1, 1]))
    return out_re, out_im


def _j6(exact: bool) -> CMat:
    J = _zeros((6, 6), exact)
    for b in range(3):
        J[2 * b, 2 * b + 1] = 1
        J[2 * b + 1, 2 * b] = -1
    if exact:
        J = np.vectorize(Fraction, otypes=[object])(J)
    return CMat(J, _zeros((6, 6), exact))


def _perm(convention: str, exact: bool) -> CMat | None:
    """Change of basis from the blockwise 6x6 ordering to the chosen one."""
    if convention == "blockwise":
        return None
    order = [0, 2, 4, 1, 3, 5]
    P = _zeros((6, 6), exact)
    for new, old in enumerate(order):
        P[new, old] = 1
    if exact:
        P = np.vectorize(Fraction, otypes=[object])(P)
    return CMat(P, _zeros((6, 6), exact))


# ---------------------------------------------------------------------------
# the H-split of J^C in complex form
# ---------------------------------------------------------------------------

# position of (m_k, a_k) inside the 27 coordinates, k = 1, 2, 3
def _slot(k: int) -> tuple[slice, slice]:
    base = 3 + 8 * (k - 1)
    return slice(base, base + 4), slice(base + 4, base + 8)


def _split(vre: Sequence, vim: Sequence, exact: bool):
    """J^C coordinates -> (6x6 complex block matrix k(M), 2x6 complex block row k(a))."""
    def q(k, part):
        s = _slot(k)[part]
        return list(vre[s]), list(vim[s])

    def kq(re, im):
        return k_map(re, im) if exact else k_map([float(x) for x in re], [float(x) for x in im])

    def scalar(k):
        z = [vre[k], 0, 0, 0], [vim[k], 0, 0, 0]
        return kq(*z)

    def conj(re, im):
        return [re[0]] + [-x for x in re[1:]], [im[0]] + [-x for x in im[1:]]

    m1, m2, m3 = q(1, 0), q(2, 0), q(3, 0)
    blocks = [[scalar(0), kq(*m3), kq(*conj(*m2))],
              [kq(*conj(*m3)), scalar(1), kq(*m1)],
              [kq(*m2), kq(*conj(*m1)), scalar(2)]]
    M = CMat(np.block([[b.re for b in row] for row in blocks]), np.block([[b.im for b in row] for row in blocks]))
    arow = [kq(*q(k, 1)) for k in (1, 2, 3)]
    A = CMat(np.hstack([b.re for b in arow]), np.hstack([b.im for b in arow]))
    return M, A


def _join(M: CMat, A: CMat, exact: bool) -> tuple[list, list]:
    """Inverse of :func:`_split` (reads the upper triangle of M)."""
    re, im = [0] * DIM_J, [0] * DIM_J
    for i in range(3):
        h_re, h_im = k_inverse(M.block(i, i))
        re[i], im[i] = h_re[0], h_im[0]
    for k, (i, j) in zip((1, 2, 3), ((1, 2), (2, 0), (0, 1))):
        h_re, h_im = k_inverse(M.block(i, j))
        s = _slot(k)[0]
        re[s], im[s] = h_re, h_im
    for k in (1, 2, 3):
        h_re, h_im = k_inverse(A.block(0, k - 1))
        s = _slot(k)[1]
        re[s], im[s] = h_re, h_im
    return re, im


def _operator_from_columns(image: Callable, exact: bool, real_only: bool) -> LinearOperator:
    """Assemble a C-linear operator from its action on the 27 real basis vectors."""
    R = _zeros((DIM_J, DIM_J), exact)
    I = _zeros((DIM_J, DIM_J), exact)
    zero = Fraction(0) if exact else 0.0
    for b in range(DIM_J):
        vre = [zero] * DIM_J
        vre[b] = Fraction(1) if exact else 1.0
        re, im = image(np.array(vre, dtype=object if exact else float), np.array([zero] * DIM_J, dtype=object if exact else float))
        R[:, b], I[:, b] = re, im
    if real_only:
        if exact:
            if any(x != 0 for x in I.ravel()):
                raise PreconditionError("map does not preserve the real form J")
            return LinearOperator(RatMat.from_fractions(R), "J")
        return LinearOperator(R.astype(float), "J")
    if exact:
        return LinearOperator(cforms.cform(RatMat.from_fractions(R), RatMat.from_fractions(I)), "JC")
    return LinearOperator(cforms.cform(R.astype(float), I.astype(float)), "JC")


# ---------------------------------------------------------------------------
# quaternion helpers and samplers
# ---------------------------------------------------------------------------


def _is_exact_seq(vals) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in np.ravel(np.asarray(vals, dtype=object)))


def quat_matrix_to_complex(A: np.ndarray) -> CMat:
    """Blockwise k of an n x n quaternion matrix (shape (n, n, 4))."""
    A = np.asarray(A, dtype=object if _is_exact_seq(A) else float)
    n = A.shape[0]
    rows = [[k_map(list(A[i, j])) for j in range(n)] for i in range(n)]
    return CMat(np.block([[b.re for b in r] for r in rows]), np.block([[b.im for b in r] for r in rows]))


def complex_to_quat_matrix(U: CMat, tol: float = 1e-9) -> np.ndarray:
    n = U.shape[0] // 2
    out = np.zeros((n, n, 4), dtype=object if U.exact else float)
    for i in range(n):
        for j in range(n):
            re, im = k_inverse(U.block(i, j))
            if not U.exact and max(abs(x) for x in im) > tol:
                raise PreconditionError("matrix is not quaternionic")
            out[i, j] = re
    return out


def quat_norm2(p) -> float:
    return sum(x * x for x in p)


def _check_unit(p, name: str):
    if len(p) != 4:
        raise PreconditionError(f"{name} must be a quaternion (4 coordinates)")
    n2 = quat_norm2(p)
    if _is_exact_seq(p):
        if n2 != 1:
            raise PreconditionError(f"{name} is not a unit quaternion")
    elif abs(float(n2) - 1.0) > 1e-12:
        raise PreconditionError(f"{name} is not a unit quaternion (|{name}|^2 = {float(n2):.3g})")


def _check_unitary(U: CMat, name: str, special: bool = False):
    n = U.shape[0]
    G = U.H @ U
    if U.exact:
        eye = np.eye(n, dtype=np.int64)
        ok = all(G.re[i, j] == eye[i, j] and G.im[i, j] == 0 for i in range(n) for j in range(n))
        if not ok:
            raise PreconditionError(f"{name} is not unitary")
    else:
        dev = np.max(np.abs(G.complex() - np.eye(n)))
        if dev > 1e-12:
            raise PreconditionError(f"{name} is not unitary (deviation {dev:.3g})")
    if special:
        d = np.linalg.det(U.complex().astype(complex))
        if abs(d - 1) > 1e-12:
            raise PreconditionError(f"{name} does not have determinant 1 (det = {d:.6g})")


def random_unit_quaternion(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(4)
    return v / np.linalg.norm(v)


def rational_unit_quaternion(rng: np.random.Generator, bound: int = 6) -> list[Fraction]:
    """Exact unit quaternion by inverse stereographic projection of a rational point."""
    u = [Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1))) for _ in range(3)]
    s = sum(x * x for x in u)
    return [(1 - s) / (1 + s)] + [2 * x / (1 + s) for x in u]


def random_sp(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random element of Sp(n) = exp of a random quaternionic skew-hermitian matrix."""
    S = rng.standard_normal((n, n, 4))
    for i in range(n):
        S[i, i, 0] = 0.0
        for j in range(i):
            S[j, i] = -np.array([S[i, j, 0], -S[i, j, 1], -S[i, j, 2], -S[i, j, 3]])
    U = expm_array(quat_matrix_to_complex(S).complex())
    return complex_to_quat_matrix(CMat.of(U))


def random_su(n: int, rng: np.random.Generator) -> np.ndarray:
    H = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = H - H.conj().T
    H = H - np.trace(H) / n * np.eye(n)
    return expm_array(H)


def quat_identity(n: int, exact: bool = True) -> np.ndarray:
    out = np.zeros((n, n, 4), dtype=object if exact else float)
    if exact:
        out[...] = Fraction(0)
    for i in range(n):
        out[i, i, 0] = 1
    return out


def quat_diag(*entries) -> np.ndarray:
    """Block-diagonal quaternion matrix from quaternions and square quaternion matrices."""
    blocks = [np.asarray(e, dtype=object).reshape(1, 1, 4) if np.ndim(e) == 1 else np.asarray(e, dtype=object) for e in entries]
    n = sum(b.shape[0] for b in blocks)
    exact = all(_is_exact_seq(b) for b in blocks)
    out = np.zeros((n, n, 4), dtype=object)
    out[...] = Fraction(0) if exact else 0.0
    i = 0
    for b in blocks:
        m = b.shape[0]
        out[i:i + m, i:i + m] = b
        i += m
    return out if exact else out.astype(float)


def quat_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    U = quat_matrix_to_complex(A) @ quat_matrix_to_complex(B)
    return complex_to_quat_matrix(U)


def quat_mul(p, q) -> list:
    a0, a1, a2, a3 = p
    b0, b1, b2, b3 = q
    return [a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0]


# ---------------------------------------------------------------------------
# F4^gamma, E6^gamma parametrizations
# ---------------------------------------------------------------------------


def phi_f4_gamma(p: Sequence, A: np.ndarray) -> LinearOperator:
    """phi(p, A)(M + a) = A M A^* + p a A^* for p in Sp(1), A in Sp(3), a a row vector."""
    _check_unit(p, "p")
    exact = _is_exact_seq(p) and _is_exact_seq(A)
    U = quat_matrix_to_complex(A)
    _check_unitary(U, "A")
    kp = k_map(list(p))

    def image(vre, vim):
        M, a = _split(vre, vim, exact)
        return _join(U @ M @ U.H, kp @ a @ U.H, exact)

    return _operator_from_columns(image, exact, real_only=True)


def phi4(p: Sequence, q: Sequence, B: np.ndarray) -> LinearOperator:
    """phi4(p, q, B) = phi(p, diag(q, B))."""
    _check_unit(q, "q")
    return phi_f4_gamma(p, quat_diag(list(q), B))


def _i1() -> np.ndarray:
    out = quat_identity(3)
    out[0, 0, 0] = -1
    return out


def phi6(p: Sequence, A, convention: str | None = None) -> LinearOperator:
    """phi(p, A)(M + a) = k_J^{-1}(A k_J(M) tA) + p a k^{-1}(A^*) for p in Sp(1), A in SU(6).

    ``A`` is a complex 6x6 array or a :class:`CMat` (exact when rational).
    """
    convention = convention or KJ_CONVENTION
    if convention not in KJ_CONVENTIONS:
        raise ValueError(f"unknown k_J convention {convention!r}")
    _check_unit(p, "p")
    U = A if isinstance(A, CMat) else CMat.of(np.asarray(A, dtype=complex))
    if U.shape != (6, 6):
        raise PreconditionError("A must be 6x6")
    exact = U.exact and _is_exact_seq(p)
    _check_unitary(U, "A", special=True)
    P = _perm(convention, exact)
    if P is not None:
        U = P.T @ U @ P
    J6 = _j6(exact)
    Jinv = -J6
    kp = k_map(list(p))

    def image(vre, vim):
        M, a = _split(vre, vim, exact)
        S = U @ (M @ J6) @ U.T
        return _join(S @ Jinv, kp @ a @ U.H, exact)

    return _operator_from_columns(image, exact, real_only=False)


def i2_matrix() -> CMat:
    d = [-1, -1, 1, 1, 1, 1]
    re = np.diag([Fraction(x) for x in d]).astype(object)
    re[re == 0] = Fraction(0)
    return CMat(re, np.full((6, 6), Fraction(0), dtype=object))


def exact_identity_c(n: int) -> CMat:
    re = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        re[i, i] = Fraction(1)
    return CMat(re, np.full((n, n), Fraction(0), dtype=object))


# ---------------------------------------------------------------------------
# maps of P^C
# ---------------------------------------------------------------------------


def jc_to_pc(alpha: LinearOperator) -> LinearOperator:
    """Extend alpha in E6 to P^C as (alpha X, tau alpha tau Y, xi, eta)."""
    if alpha.basis != "JC":
        raise ValueError("need a J^C operator")
    exact = alpha.exact
    M = alpha.mat
    R, I = cforms.c_parts(M)
    tat = cforms.cform(R, -I)
    Z = lambda r, c: cforms.zeros((r, c), exact)
    return LinearOperator(cforms.assemble([
        [M, Z(54, 54), Z(54, 4)],
        [Z(54, 54), tat, Z(54, 4)],
        [Z(4, 54), Z(4, 54), cforms.eye(4, exact)],
    ], exact), "PC")


def phi_su2(A) -> LinearOperator:
    """phi(A) on P^C for A in SU(2): the pairs (xi1, eta), (xi, eta1), (eta2, xi3), (eta3, xi2)
    move by A, (x1, y1) by tau A, and (x2, y2), (x3, y3) are fixed."""
    U = A if isinstance(A, CMat) else CMat.of(np.asarray(A, dtype=complex))
    if U.shape != (2, 2):
        raise PreconditionError("A must be 2x2")
    _check_unitary(U, "A")
    det_re = U.re[0, 0] * U.re[1, 1] - U.im[0, 0] * U.im[1, 1] - (U.re[0, 1] * U.re[1, 0] - U.im[0, 1] * U.im[1, 0])
    det_im = U.re[0, 0] * U.im[1, 1] + U.im[0, 0] * U.re[1, 1] - (U.re[0, 1] * U.im[1, 0] + U.im[0, 1] * U.re[1, 0])
    if (U.exact and (det_re != 1 or det_im != 0)) or (not U.exact and abs(complex(det_re, det_im) - 1) > 1e-12):
        raise PreconditionError("A does not have determinant 1")
    exact = U.exact
    n = 56
    Mre, Mim = _zeros((n, n), exact), _zeros((n, n), exact)
    Y = 27
    pairs = [(0, 55), (54, Y + 0), (Y + 1, 2), (Y + 2, 1)]
    for a, b in pairs:
        for (r, s), (i, j) in zip(((a, a), (a, b), (b, a), (b, b)), ((0, 0), (0, 1), (1, 0), (1, 1))):
            Mre[r, s], Mim[r, s] = U.re[i, j], U.im[i, j]
    for c in range(3, 11):
        a, b = c, Y + c
        for (r, s), (i, j) in zip(((a, a), (a, b), (b, a), (b, b)), ((0, 0), (0, 1), (1, 0), (1, 1))):
            Mre[r, s], Mim[r, s] = U.re[i, j], -U.im[i, j]
    for c in range(11, 27):
        Mre[c, c] = 1
        Mre[Y + c, Y + c] = 1
    return _pc_operator(Mre, Mim, exact)


def _pc_operator(Mre, Mim, exact: bool) -> LinearOperator:
    """Real 112x112 operator from a complex 56x56 matrix given as parts."""
    idx_re = [cforms.pc_real_index(k)[0] for k in range(56)]
    idx_im = [cforms.pc_real_index(k)[1] for k in range(56)]
    out = _zeros((112, 112), exact)
    out[np.ix_(idx_re, idx_re)] = Mre
    out[np.ix_(idx_re, idx_im)] = -Mim
    out[np.ix_(idx_im, idx_re)] = Mim
    out[np.ix_(idx_im, idx_im)] = Mre
    if exact:
        out = np.vectorize(Fraction, otypes=[object])(out)
        return LinearOperator(RatMat.from_fractions(out), "PC")
    return LinearOperator(out.astype(float), "PC")


def _jc_complex_operator(M: np.ndarray) -> LinearOperator:
    return LinearOperator(cforms.complex_to_jc_real(M), "JC")


def _oct_c_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Octonion product of complex coordinate vectors (8 each)."""
    def qmul(a, b):
        return np.array(quat_mul(a, b))

    def qconj(a):
        return np.array([a[0], -a[1], -a[2], -a[3]])

    m1, a1, m2, a2 = x[:4], x[4:], y[:4], y[4:]
    return np.concatenate([qmul(m1, m2) - qmul(qconj(a2), a1), qmul(a2, m1) + qmul(a1, qconj(m2))])


def _oct_c_conj(x: np.ndarray) -> np.ndarray:
    return np.concatenate([[x[0]], -x[1:]])


class DegenerateInput(ValueError):
    pass


def alpha1_tilde_jc(a: Sequence[float]) -> LinearOperator:
    """The closed form of exp(i F1(a)~) on J^C for a nonzero quaternion a."""
    a = np.asarray(a, dtype=float)
    if a.shape != (4,):
        raise ValueError("a is a quaternion (4 coordinates)")
    r = float(np.linalg.norm(a))
    if r == 0.0:
        raise DegenerateInput("alpha1_tilde(a) needs a != 0")
    a8 = np.concatenate([a, np.zeros(4)]).astype(complex)
    c, s = math.cos(r), math.sin(r)
    c2, s2 = math.cos(r / 2), math.sin(r / 2)
    cols = []
    for b in range(DIM_J):
        v = np.zeros(DIM_J, dtype=complex)
        v[b] = 1
        xi1, xi2, xi3 = v[:3]
        x1, x2, x3 = v[3:11], v[11:19], v[19:27]
        ax = complex(np.sum(a8 * x1))
        out = np.zeros(DIM_J, dtype=complex)
        out[0] = xi1
        out[1] = (xi2 - xi3) / 2 + (xi2 + xi3) / 2 * c + 1j * ax / r * s
        out[2] = -(xi2 - xi3) / 2 + (xi2 + xi3) / 2 * c + 1j * ax / r * s
        out[3:11] = x1 + 1j * (xi2 + xi3) * a8 / (2 * r) * s - 2 * ax * a8 / r ** 2 * s2 ** 2
        out[11:19] = x2 * c2 + 1j * _oct_c_conj(_oct_c_mul(x3, a8)) / r * s2
        out[19:27] = x3 * c2 + 1j * _oct_c_conj(_oct_c_mul(a8, x2)) / r * s2
        cols.append(out)
    return _jc_complex_operator(np.array(cols).T)


def alpha1_tilde(a: Sequence[float]) -> LinearOperator:
    """alpha~1(a) extended to P^C."""
    return jc_to_pc(alpha1_tilde_jc(a))


def alpha23_tilde_jc(t: float) -> LinearOperator:
    d = np.ones(DIM_J, dtype=complex)
    d[1], d[2] = np.exp(1j * t), np.exp(-1j * t)
    d[11:19] = np.exp(-0.5j * t)
    d[19:27] = np.exp(0.5j * t)
    return _jc_complex_operator(np.diag(d))


def alpha23_tilde(t: float) -> LinearOperator:
    return jc_to_pc(alpha23_tilde_jc(t))


def _ek(k: int) -> np.ndarray:
    v = np.zeros(DIM_J)
    v[k - 1] = 1
    return v


def alpha_k(k: int, a: float) -> LinearOperator:
    """The closed form with p_k(X) = (X, E_k) E_k + 4 E_k x (E_k x X)."""
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    e = _ek(k)
    g = metric_diag().astype(float)
    C = cross_matrix(list(e), exact=False)
    P = np.outer(e, g * e) + 4 * C @ C
    c, s = math.cos(a), math.sin(a)
    Id = np.eye(DIM_J)
    M = np.zeros((56, 56))
    M[:27, :27] = Id + (c - 1) * P
    M[:27, 27:54] = -2 * s * C
    M[:27, 55] = s * e
    M[27:54, :27] = 2 * s * C
    M[27:54, 27:54] = Id + (c - 1) * P
    M[27:54, 54] = -s * e
    M[54, 27:54] = s * g * e
    M[54, 54] = c
    M[55, :27] = -s * g * e
    M[55, 55] = c
    return LinearOperator(cforms.complex_to_pc_real(M.astype(complex)), "PC")


def alpha23(a: float) -> LinearOperator:
    """alpha_2(a) alpha_3(a)."""
    return alpha_k(2, a) @ alpha_k(3, a)


def alpha_diag(t: float) -> LinearOperator:
    """Phases e^{2it} on xi1, e^{it} on x2, x3; the inverse phases on Y; e^{-2it} xi, e^{2it} eta."""
    d = np.ones(56, dtype=complex)
    d[0] = np.exp(2j * t)
    d[11:27] = np.exp(1j * t)
    d[27] = np.exp(-2j * t)
    d[27 + 11:54] = np.exp(-1j * t)
    d[54] = np.exp(-2j * t)
    d[55] = np.exp(2j * t)
    return LinearOperator(cforms.complex_to_pc_real(np.diag(d)), "PC")


# ---------------------------------------------------------------------------
# membership tests
# ---------------------------------------------------------------------------

DEFAULT_TOL = 1e-9


@dataclass
class GroupElementReport:
    group: str
    residual: float
    tol: float
    checks: dict = field(default_factory=dict)
    operator: LinearOperator | None = None

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    def as_dict(self) -> dict:
        return {"group": self.group, "residual": self.residual, "tol": self.tol, "passed": self.passed,
                "checks": self.checks}


def f4_report(T: LinearOperator, tol: float = DEFAULT_TOL) -> GroupElementReport:
    """max over all basis pairs of |alpha(e_i o e_j) - alpha e_i o alpha e_j|, plus invertibility."""
    if T.basis != "J":
        raise ValueError("F4 acts on J (27x27)")
    T2 = _jordan_tensor_x2()
    iu, ju = np.triu_indices(DIM_J)
    if T.exact:
        N, d = T.mat.num, T.mat.den
        small = N.dtype != object and int(np.max(np.abs(N))) < 2 ** 12 and d < 2 ** 12
        N = N.astype(np.int64 if small else object)
        T2o = T2.astype(np.int64 if small else object)
        lhs = np.einsum("ijc,kc->ijk", T2o, N) * d  # alpha(2 e_i o e_j) scaled by d^2
        rhs = np.einsum("ai,bj,abk->ijk", N, N, T2o)
        diff = (lhs - rhs)[iu, ju]
        res = float(max((abs(Fraction(int(x), 2 * d * d)) for x in diff.ravel()), default=0))
        inv = exact_la.rank([list(map(int, r)) for r in N], DIM_J) == DIM_J
    else:
        A = T.mat
        lhs = np.einsum("ijc,kc->ijk", T2 / 2.0, A)
        rhs = np.einsum("ai,bj,abk->ijk", A, A, T2 / 2.0)
        res = float(np.max(np.abs(lhs - rhs)[iu, ju]))
        inv = np.linalg.svd(A, compute_uv=False).min() > 1e-6
    if not inv:
        res = max(res, float("inf"))
    return GroupElementReport("F4", res, tol, {"product": res, "invertible": bool(inv)}, T)


def is_f4(T: LinearOperator, tol: float = DEFAULT_TOL) -> bool:
    return f4_report(T, tol).passed


def _c_linearity_residual(M: np.ndarray, n: int) -> float:
    R, I = M[:n, :n], M[n:, :n]
    return float(max(np.max(np.abs(M[:n, n:] + I)), np.max(np.abs(M[n:, n:] - R))))


def _cross_c(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("a,b,abc->c", x, y, _cross_tensor_x4() / 4.0)


def _herm_j(x: np.ndarray, y: np.ndarray) -> complex:
    return complex(np.sum(metric_diag() * np.conj(x) * y))


def _random_c(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def e6_report(T: LinearOperator, tol: float = DEFAULT_TOL, pairs: int = 20, seed: int = 0) -> GroupElementReport:
    """alpha X x alpha Y = tau alpha tau (X x Y) and <alpha X, alpha Y> = <X, Y> on random pairs."""
    if T.basis != "JC":
        raise ValueError("E6 acts on J^C (54x54 real form)")
    M = T.dense()
    lin = _c_linearity_residual(M, DIM_J)
    A = cforms.jc_real_to_complex(M)
    rng = np.random.default_rng(seed)
    cross_res = herm_res = 0.0
    for _ in range(pairs):
        X, Y = _random_c(rng, DIM_J), _random_c(rng, DIM_J)
        lhs = _cross_c(A @ X, A @ Y)
        rhs = np.conj(A) @ _cross_c(X, Y)
        scale = max(1.0, float(np.max(np.abs(rhs))))
        cross_res = max(cross_res, float(np.max(np.abs(lhs - rhs))) / scale)
        h0 = _herm_j(X, Y)
        herm_res = max(herm_res, abs(_herm_j(A @ X, A @ Y) - h0) / max(1.0, abs(h0)))
    res = max(lin, cross_res, herm_res)
    return GroupElementReport("E6", res, tol, {"c_linear": lin, "cross": cross_res, "hermitian": herm_res}, T)


def is_e6(T: LinearOperator, tol: float = DEFAULT_TOL, pairs: int = 20, seed: int = 0) -> bool:
    return e6_report(T, tol, pairs, seed).passed


def _herm_pc(x: np.ndarray, y: np.ndarray) -> complex:
    g = np.concatenate([metric_diag(), metric_diag(), [1, 1]]).astype(float)
    return complex(np.sum(g * np.conj(x) * y))


@lru_cache(maxsize=8)
def _e7_samples(pairs: int, seed: int) -> tuple:
    """Seeded argument pairs with their cross operators (shared by every membership call)."""
    from .lie import _cross_pq_complex

    rng = np.random.default_rng(seed)
    out = []
    for _ in range(pairs):
        P, Q = _random_c(rng, 56), _random_c(rng, 56)
        out.append((P, Q, cforms.pc_real_to_complex(_cross_pq_complex(P, Q).dense())))
    return tuple(out)


def e7_report(T: LinearOperator, tol: float = DEFAULT_TOL, pairs: int = 20, seed: int = 0) -> GroupElementReport:
    """alpha (P x Q) alpha^{-1} = alpha P x alpha Q and <alpha P, alpha Q> = <P, Q> on random pairs."""
    from .lie import _cross_pq_complex

    if T.basis != "PC":
        raise ValueError("E7 acts on P^C (112x112 real form)")
    M = T.dense()
    re_idx = [cforms.pc_real_index(k)[0] for k in range(56)]
    im_idx = [cforms.pc_real_index(k)[1] for k in range(56)]
    lin = float(max(np.max(np.abs(M[np.ix_(re_idx, im_idx)] + M[np.ix_(im_idx, re_idx)])),
                    np.max(np.abs(M[np.ix_(im_idx, im_idx)] - M[np.ix_(re_idx, re_idx)]))))
    A = cforms.pc_real_to_complex(M)
    try:
        Ainv = np.linalg.inv(A)
    except np.linalg.LinAlgError:
        return GroupElementReport("E7", float("inf"), tol, {"invertible": False}, T)
    cross_res = herm_res = 0.0
    for P, Q, pq in _e7_samples(pairs, seed):
        lhs = A @ pq @ Ainv
        rhs = cforms.pc_real_to_complex(_cross_pq_complex(A @ P, A @ Q).dense())
        scale = max(1.0, float(np.max(np.abs(rhs))))
        cross_res = max(cross_res, float(np.max(np.abs(lhs - rhs))) / scale)
        h0 = _herm_pc(P, Q)
        herm_res = max(herm_res, abs(_herm_pc(A @ P, A @ Q) - h0) / max(1.0, abs(h0)))
    res = max(lin, cross_res, herm_res)
    return GroupElementReport("E7", res, tol, {"c_linear": lin, "cross": cross_res, "hermitian": herm_res}, T)


def is_e7(T: LinearOperator, tol: float = DEFAULT_TOL, pairs: int = 20, seed: int = 0) -> bool:
    return e7_report(T, tol, pairs, seed).passed


# ---------------------------------------------------------------------------
# homomorphism and kernel harness
# ---------------------------------------------------------------------------


@dataclass
class HomomorphismReport:
    samples: int
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


@dataclass
class KernelReport:
    kernel_residuals: list
    min_non_kernel_distance: float
    tol: float

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.kernel_residuals) and self.min_non_kernel_distance > self.tol


def verify_homomorphism(f: Callable, domain_sampler: Callable, n: int, tol: float,
                        mul: Callable, seed: int = 0) -> HomomorphismReport:
    """max over n samples of |f(g1 g2) - f(g1) f(g2)|."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        g1, g2 = domain_sampler(rng), domain_sampler(rng)
        lhs = f(mul(g1, g2))
        rhs = f(g1) @ f(g2)
        worst = max(worst, lhs.residual(rhs))
    return HomomorphismReport(n, worst, tol)


def verify_kernel(f: Callable, kernel_list: Sequence, non_kernel_sampler: Callable, tol: float,
                  n: int = 50, seed: int = 0) -> KernelReport:
    """Kernel elements map to the identity; sampled elements do not."""
    res = []
    for g in kernel_list:
        img = f(g)
        res.append(img.residual(LinearOperator.identity(img.basis, img.exact)))
    rng = np.random.default_rng(seed)
    dmin = float("inf")
    for _ in range(n):
        img = f(non_kernel_sampler(rng))
        dmin = min(dmin, img.residual(LinearOperator.identity(img.basis, img.exact)))
    return KernelReport(res, dmin, tol)


def apply_pc(op: LinearOperator, P: FreudenthalVector) -> FreudenthalVector:
    return P.apply(op)


# ---------------------------------------------------------------------------
# stabilizer characterizations by exact linear solves
# ---------------------------------------------------------------------------


def _qmat_mul_sym(A, B):
    """Product of 2x2 quaternion matrices given as nested lists of 4-lists."""
    out = [[[0] * 4 for _ in range(2)] for _ in range(2)]
    for i in range(2):
        for j in range(2):
            acc = [0, 0, 0, 0]
            for k in range(2):
                acc = [x + y for x, y in zip(acc, quat_mul(A[i][k], B[k][j]))]
            out[i][j] = acc
    return out


def commutant_of_offdiagonal() -> list[list[Fraction]]:
    """Exact basis of {B in M(2, H) : B N_h = N_h B for N_h = [[0, h], [conj h, 0]], h in H}.

    B is parametrized by 16 real unknowns; each product is linear in them.
    """
    rows = []
    for hk in range(4):
        h = [0] * 4
        h[hk] = 1
        hb = [h[0]] + [-x for x in h[1:]]
        N = [[[0] * 4, h], [hb, [0] * 4]]
        # each unknown u = 4*(2i+j)+c contributes a unit quaternion at B[i][j]
        cols = []
        for u in range(16):
            i, j, c = u // 8, (u // 4) % 2, u % 4
            Bu = [[[0] * 4 for _ in range(2)] for _ in range(2)]
            Bu[i][j][c] = 1
            BN = _qmat_mul_sym(Bu, N)
            NB = _qmat_mul_sym(N, Bu)
            cols.append([BN[a][b][d] - NB[a][b][d] for a in range(2) for b in range(2) for d in range(4)])
        for r in range(16):
            row = {u: cols[u][r] for u in range(16) if cols[u][r]}
            if row:
                rows.append(row)
    return exact_la.nullspace(rows, 16)


def fixing_pairs_he4() -> list[list[Fraction]]:
    """Exact basis of {(p, q) in H^2 : p h = h q for all h in H} (the condition p h conj(q) = h for unit q)."""
    rows = []
    for hk in range(4):
        h = [0] * 4
        h[hk] = 1
        cols = []
        for u in range(8):
            e = [0] * 4
            e[u % 4] = 1
            cols.append(quat_mul(e, h) if u < 4 else [-x for x in quat_mul(h, e)])
        for r in range(4):
            row = {u: cols[u][r] for u in range(8) if cols[u][r]}
            if row:
                rows.append(row)
    return exact_la.nullspace(rows, 8)


I1 = _i1()
