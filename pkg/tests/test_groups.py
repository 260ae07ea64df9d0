"""Group parametrizations, closed-form one-parameter subgroups and membership tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exlie import calibration, groups
from exlie.freudenthal import gamma_pc, lambda_operator, sigma_pc
from exlie.jordan import JordanElement, gamma_operator, sigma_operator
from exlie.linalg.operator import LinearOperator
from exlie.scalars import oct_inner

seeds = st.integers(0, 2 ** 32 - 1)
angles = st.floats(-math.pi, math.pi, allow_nan=False)


def _det(c):
    # cubic norm from coordinates, independent of the operator code
    X = JordanElement.from_coords(list(c))
    (x1, x2, x3), (a, b, d) = X.x, X.xi
    n = lambda x: oct_inner(x, x)
    return a * b * d + 2 * ((x1 * x2) * x3).coords()[0] - a * n(x1) - b * n(x2) - d * n(x3)


def _quat_prod(p, q):
    return np.array(groups.quat_mul(list(p), list(q)))


@settings(max_examples=10)
@given(seeds)
def test_f4_parametrization_preserves_det_and_trace(seed):
    rng = np.random.default_rng(seed)
    T = groups.phi_f4_gamma(groups.random_unit_quaternion(rng), groups.random_sp(3, rng))
    assert groups.is_f4(T)
    assert T.bracket(gamma_operator("J", False)).norm_inf() <= 1e-12
    x = rng.standard_normal(27)
    y = T.dense() @ x
    assert abs(_det(y) - _det(x)) <= 1e-9 * max(1.0, abs(_det(x)))
    assert abs(sum(y[:3]) - sum(x[:3])) <= 1e-12


@settings(max_examples=10)
@given(seeds)
def test_f4_parametrization_is_multiplicative(seed):
    rng = np.random.default_rng(seed)
    p1, p2 = groups.random_unit_quaternion(rng), groups.random_unit_quaternion(rng)
    A1, A2 = groups.random_sp(3, rng), groups.random_sp(3, rng)
    lhs = groups.phi_f4_gamma(_quat_prod(p1, p2), groups.quat_matmul(A1, A2))
    rhs = groups.phi_f4_gamma(p1, A1) @ groups.phi_f4_gamma(p2, A2)
    assert lhs.residual(rhs) <= 1e-12


def test_sigma_and_kernel_of_phi4_exact():
    one, minus = [1, 0, 0, 0], [-1, 0, 0, 0]
    assert groups.phi_f4_gamma(minus, groups.I1).equals(sigma_operator("J"))
    E2 = groups.quat_identity(2)
    assert groups.phi4(one, one, E2).equals(LinearOperator.identity("J"))
    assert groups.phi4(minus, minus, -E2).equals(LinearOperator.identity("J"))
    assert not groups.phi4(minus, one, E2).equals(LinearOperator.identity("J"))


def test_exact_rational_inputs_give_exact_maps():
    rng = np.random.default_rng(5)
    p = groups.rational_unit_quaternion(rng)
    q = groups.rational_unit_quaternion(rng)
    T = groups.phi4(p, q, groups.quat_identity(2))
    assert T.exact and groups.is_f4(T.to_float())


def test_preconditions():
    with pytest.raises(groups.PreconditionError):
        groups.phi_f4_gamma([2, 0, 0, 0], groups.quat_identity(3))
    bad = groups.quat_identity(3, exact=False)
    bad[0, 0, 0] = 2.0
    with pytest.raises(groups.PreconditionError):
        groups.phi_f4_gamma([1, 0, 0, 0], bad)
    with pytest.raises(groups.PreconditionError):
        groups.phi6([1, 0, 0, 0], np.diag([1j, 1, 1, 1, 1, 1]))
    with pytest.raises(groups.PreconditionError):
        groups.phi_su2(np.diag([1j, 1j]))
    with pytest.raises(ValueError):
        groups.phi6([1, 0, 0, 0], np.eye(6), convention="rowwise")


@settings(max_examples=5)
@given(seeds)
def test_e6_parametrization(seed):
    rng = np.random.default_rng(seed)
    T = groups.phi6(groups.random_unit_quaternion(rng), groups.random_su(6, rng))
    assert groups.is_e6(T)
    assert T.bracket(gamma_operator("JC", False)).norm_inf() <= 1e-12


def test_phi6_sigma_exact():
    assert groups.phi6([-1, 0, 0, 0], groups.i2_matrix()).equals(sigma_operator("JC"))


@settings(max_examples=10)
@given(seeds)
def test_su2_map(seed):
    rng = np.random.default_rng(seed)
    A, B = groups.random_su(2, rng), groups.random_su(2, rng)
    assert groups.phi_su2(A @ B).residual(groups.phi_su2(A) @ groups.phi_su2(B)) <= 1e-12
    T = groups.phi_su2(A)
    assert groups.is_e7(T)
    assert T.bracket(sigma_pc(False)).norm_inf() <= 1e-12
    assert T.bracket(gamma_pc(False)).norm_inf() <= 1e-12


def test_su2_map_at_minus_identity_is_minus_sigma():
    m = groups.CMat.of(-np.eye(2, dtype=complex))
    assert groups.phi_su2(m).residual(-sigma_pc(False)) == 0.0


@given(angles, angles)
def test_one_parameter_groups_are_additive(s, t):
    for f in (groups.alpha23_tilde, groups.alpha_diag, groups.alpha23,
              lambda a: groups.alpha_k(2, a), lambda a: groups.alpha_k(3, a)):
        assert f(s + t).residual(f(s) @ f(t)) <= 1e-12


@given(st.floats(0.1, 2.0), st.floats(0.1, 2.0), seeds)
def test_alpha1_tilde_is_additive_along_a_ray(s, t, seed):
    u = groups.random_unit_quaternion(np.random.default_rng(seed))
    lhs = groups.alpha1_tilde((s + t) * u)
    assert lhs.residual(groups.alpha1_tilde(s * u) @ groups.alpha1_tilde(t * u)) <= 1e-12


@settings(max_examples=10)
@given(angles, seeds)
def test_closed_forms_lie_in_e7_and_commute_with_involutions(t, seed):
    a = groups.random_unit_quaternion(np.random.default_rng(seed)) * (1 + abs(t))
    for T in (groups.alpha1_tilde(a), groups.alpha23_tilde(t), groups.alpha23(t), groups.alpha_diag(t)):
        assert groups.is_e7(T)
        assert T.bracket(sigma_pc(False)).norm_inf() <= 1e-12
        assert T.bracket(gamma_pc(False)).norm_inf() <= 1e-12


def test_closed_forms_match_exponentials():
    res = calibration.closed_form_residuals(calibration.calibrate().conventions)
    assert max(res.values()) <= 1e-10


def test_closed_form_input_checks():
    with pytest.raises(groups.DegenerateInput):
        groups.alpha1_tilde([0, 0, 0, 0])
    with pytest.raises(ValueError):
        groups.alpha1_tilde([1, 0, 0])
    with pytest.raises(ValueError):
        groups.alpha_k(1, 0.3)


def test_membership_rejects_non_elements():
    assert not groups.is_f4(LinearOperator.identity("J", False).scale(2.0))
    assert not groups.is_e6(LinearOperator.identity("JC", False).scale(2.0))
    assert not groups.is_e7(LinearOperator.identity("PC", False).scale(2.0))
    assert not groups.is_e7(LinearOperator.zero("PC", False))
    assert groups.is_e7(lambda_operator(False))
    with pytest.raises(ValueError):
        groups.is_e7(LinearOperator.identity("J", False))


def test_exact_stabilizer_solves():
    assert groups.commutant_of_offdiagonal() == [[1 if u in (0, 12) else 0 for u in range(16)]]
    assert groups.fixing_pairs_he4() == [[1, 0, 0, 0, 1, 0, 0, 0]]


def test_harness_reports():
    rng_su2 = lambda r: groups.random_su(2, r)
    h = groups.verify_homomorphism(groups.phi_su2, rng_su2, 3, 1e-9, lambda a, b: a @ b)
    assert h.passed and h.samples == 3
    k = groups.verify_kernel(groups.phi_su2, [np.eye(2)], rng_su2, 1e-9, n=3)
    assert k.passed
    bad = groups.verify_kernel(groups.phi_su2, [-np.eye(2)], rng_su2, 1e-9, n=3)
    assert not bad.passed


def test_reference_values():
    one = [1, 0, 0, 0]
    I_J, I_JC, I_PC = (LinearOperator.identity(b) for b in ("J", "JC", "PC"))
    assert groups.is_f4(I_J.to_float()) and groups.is_f4(sigma_operator("J").to_float())
    assert groups.is_e6(gamma_operator("JC", False))
    assert groups.phi_f4_gamma(one, groups.quat_identity(3)).equals(I_J)
    assert groups.phi6(one, groups.exact_identity_c(6)).equals(I_JC)
    assert groups.phi_su2(groups.exact_identity_c(2)).equals(I_PC)
    for T in (groups.alpha23_tilde(0.0), groups.alpha_k(2, 0.0), groups.alpha_diag(0.0)):
        assert T.residual(I_PC.to_float()) == 0.0


def test_closed_form_points():
    from exlie import orbits
    from exlie.freudenthal import FreudenthalVector
    X = np.zeros(27, dtype=complex)
    X[1], X[2] = 1, -1
    P3 = FreudenthalVector.from_parts(X)
    assert P3.apply(groups.alpha23_tilde(math.pi / 2)).distance(orbits.s5_target()) <= 1e-15
    assert orbits.s6_target().apply(groups.alpha_diag(-math.pi / 4)).distance(orbits.s7_target()) <= 1e-15


def test_alpha23_tilde_is_an_exponential():
    from exlie import lie
    from exlie.linalg.expm import matrix_exp
    t = 0.4
    gen = lie.phi_action(lie.i_tilde([0, t, -t] + [0] * 24, exact=False), exact=False)
    assert matrix_exp(gen).residual(groups.alpha23_tilde(t)) <= 1e-9


def test_alpha1_tilde_full_turn():
    a = np.array([1.0, -2.0, 0.5, 1.5])
    a = 2 * math.pi * a / np.linalg.norm(a)
    M = groups.alpha1_tilde_jc(a).dense()
    idx = [b + j for b in (0, 27) for j in range(11)]
    assert np.allclose(M[np.ix_(idx, idx)], np.eye(len(idx)), atol=1e-14)
