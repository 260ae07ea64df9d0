"""Exact and modular linear algebra, spans, operators and the matrix exponential."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from exlie.linalg import exact, modular
from exlie.linalg.expm import expm_array, matrix_exp
from exlie.linalg.operator import BasisMismatch, LinearOperator
from exlie.linalg.ratmat import RatMat, safe_matmul
from exlie.linalg.span import ExactSpan, NotAnInvolution, NotInSpan, eigenspace_involution, span_equal


def int_matrix(rows, cols, lo=-4, hi=4):
    return st.lists(st.lists(st.integers(lo, hi), min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda m: np.array(m, dtype=np.int64))


@st.composite
def low_rank(draw):
    n, m, r = draw(st.integers(1, 7)), draw(st.integers(1, 7)), draw(st.integers(0, 4))
    A = draw(int_matrix(n, r)) if r else np.zeros((n, 0), dtype=np.int64)
    B = draw(int_matrix(r, m)) if r else np.zeros((0, m), dtype=np.int64)
    return A @ B if r else np.zeros((n, m), dtype=np.int64)


@given(low_rank())
def test_exact_and_modular_rank_match_float_rank(M):
    r = int(np.linalg.matrix_rank(M.astype(float)))
    assert exact.rank(M.tolist(), M.shape[1]) == r
    assert modular.modular_rank(M) == r


@given(low_rank())
def test_nullspace_is_kernel(M):
    n = M.shape[1]
    N = exact.nullspace(M.tolist(), n)
    assert len(N) == n - exact.rank(M.tolist(), n)
    F = M.astype(object)
    for v in N:
        assert not any(F @ np.array(v, dtype=object))


@given(int_matrix(4, 4, -5, 5))
def test_bareiss_determinant(M):
    r, d = exact.bareiss_rank_det(M)
    assert r == int(np.linalg.matrix_rank(M.astype(float)))
    if r == 4:
        assert d == round(np.linalg.det(M.astype(float)))


@given(int_matrix(5, 5, -3, 3))
def test_inertia_matches_eigenvalue_signs(A):
    S = A + A.T
    w = np.linalg.eigvalsh(S.astype(float))
    expect = (int(np.sum(w < -1e-9)), int(np.sum(np.abs(w) <= 1e-9)), int(np.sum(w > 1e-9)))
    assert exact.inertia(S) == expect


def test_inertia_rejects_asymmetric():
    with pytest.raises(ValueError):
        exact.inertia([[0, 1], [0, 0]])


def test_inertia_with_zero_diagonal():
    assert exact.inertia([[0, 1], [1, 0]]) == (1, 0, 1)


@given(int_matrix(3, 4), int_matrix(4, 2), st.integers(1, 6), st.integers(1, 6))
def test_ratmat_arithmetic(A, B, da, db):
    P, Q = RatMat(A, da), RatMat(B, db)
    Fa, Fb = P.to_fractions(), Q.to_fractions()
    assert np.all((P @ Q).to_fractions() == Fa @ Fb)
    assert np.all((P + P.scale(Fraction(1, 3))).to_fractions() == Fa * Fraction(4, 3))
    assert (P - P).is_zero()


@given(st.integers(2 ** 18, 2 ** 20))
def test_safe_matmul_float_path_is_exact(big):
    rng = np.random.default_rng(big)
    a = rng.integers(-big, big, size=(6, 5))
    b = rng.integers(-big, big, size=(5, 4))
    assert np.array_equal(safe_matmul(a, b).astype(object), a.astype(object) @ b.astype(object))


def test_safe_matmul_widens_on_overflow():
    a = np.full((2, 2), 2 ** 40, dtype=np.int64)
    out = safe_matmul(a, a)
    assert out[0, 0] == 2 * 2 ** 80


@given(low_rank())
def test_span_coordinates_reconstruct(M):
    if not M.any():
        return
    S = ExactSpan(list(M))
    assert S.dim == int(np.linalg.matrix_rank(M.astype(float)))
    B = np.array(S.basis_vectors(), dtype=object)
    for v, c in zip(M, S.coordinates(list(M))):
        assert np.all(np.array(c, dtype=object) @ B == v.astype(object))


def test_span_membership_and_errors():
    S = ExactSpan([[1, 2, 0], [0, 1, 1]])
    assert S.contains([1, 3, 1])
    assert not S.contains([0, 0, 1])
    with pytest.raises(NotInSpan):
        S.coordinates([[0, 0, 1]])
    assert span_equal([[1, 0], [0, 1]], [[1, 1], [1, -1]])
    assert not span_equal([[1, 0]], [[0, 1]])


def test_eigenspaces_of_involution():
    T = [[0, 1], [1, 0]]
    assert eigenspace_involution(T, 1) == [[1, 1]]
    assert eigenspace_involution(T, -1) == [[-1, 1]]
    with pytest.raises(NotAnInvolution):
        eigenspace_involution([[1, 1], [0, 1]])


@given(st.integers(0, 10 ** 6))
def test_exp_of_skew_matrix_is_orthogonal(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((8, 8)) * 3
    E = expm_array(A - A.T)
    assert np.allclose(E @ E.T, np.eye(8), atol=1e-11)
    assert np.isclose(np.linalg.det(E), 1.0)


@given(st.integers(0, 10 ** 6))
def test_exp_of_symmetric_matches_eigendecomposition(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((6, 6))
    S = A + A.T
    w, V = np.linalg.eigh(S)
    assert np.allclose(expm_array(S), V @ np.diag(np.exp(w)) @ V.T, rtol=1e-11, atol=1e-11)


def test_exp_of_rotation_generator():
    t = 0.7
    E = expm_array(np.array([[0.0, -t], [t, 0.0]]))
    assert np.allclose(E, [[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], atol=1e-15)


def test_exp_of_nilpotent():
    N = np.diag([1.0, 2.0], k=1)
    assert np.allclose(expm_array(N), np.eye(3) + N + N @ N / 2)


def test_matrix_exp_needs_float_operator():
    with pytest.raises(TypeError):
        matrix_exp(LinearOperator.identity("J"))
    assert matrix_exp(LinearOperator.zero("J", False)).residual(LinearOperator.identity("J", False)) == 0.0


def test_operator_serialisation_round_trip():
    rng = np.random.default_rng(1)
    ex = LinearOperator(RatMat(rng.integers(-5, 5, size=(27, 27)), 6), "J")
    fl = ex.to_float()
    assert LinearOperator.from_dict(ex.to_dict()).equals(ex)
    assert np.array_equal(LinearOperator.from_dict(fl.to_dict()).mat, fl.mat)


def test_operator_basis_checks():
    with pytest.raises(ValueError):
        LinearOperator(np.eye(3), "J")
    with pytest.raises(BasisMismatch):
        LinearOperator.identity("J") @ LinearOperator.identity("JC")
    I = LinearOperator.identity("J")
    assert I.bracket(I).is_zero()


def test_reference_values():
    assert exact.rank(np.eye(5, dtype=np.int64).tolist(), 5) == 5
    assert exact.rank([[0] * 7] * 3, 7) == 0 and len(exact.nullspace([[0] * 7] * 3, 7)) == 7
    assert modular.modular_rank(np.eye(5, dtype=np.int64)) == 5
    # a denominator equal to the prime is cleared before reduction
    assert modular.modular_rank([[Fraction(1, 3), 1], [0, 0]], primes=(3,)) == 1
    assert len(eigenspace_involution(np.eye(4, dtype=np.int64).tolist(), 1)) == 4
    assert eigenspace_involution((-np.eye(4, dtype=np.int64)).tolist(), 1) == []
    from exlie.jordan import sigma_operator
    assert len(eigenspace_involution(sigma_operator("J"), 1)) == 11
    assert span_equal([[1, 0, 0], [0, 1, 0]], [[0, 1, 0], [1, 0, 0]])
    assert not ExactSpan([[0, 1, 0]]).contains([1, 0, 0])
    assert np.array_equal(expm_array(np.zeros((3, 3))), np.eye(3))
    assert np.array_equal(expm_array(np.array([[0.0, 1.0], [0.0, 0.0]])), [[1.0, 1.0], [0.0, 1.0]])
