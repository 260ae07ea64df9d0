"""Derivations of J, compact e6 and e7, the Phi action and the subalgebra families."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exlie import groups, lie, suites
from exlie.freudenthal import FreudenthalVector, gamma_pc, sigma_pc, skew_form
from exlie.jordan import DIM_J, mult_matrix, unit_coords
from exlie.linalg.expm import matrix_exp
from exlie.linalg.operator import LinearOperator
from exlie.linalg.ratmat import RatMat

coeffs = st.lists(st.integers(-3, 3), min_size=DIM_J, max_size=DIM_J)


def _combo(ops, c):
    acc = ops[0].scale(c[0])
    for op, x in zip(ops[1:], c[1:]):
        if x:
            acc = acc + op.scale(x)
    return acc


@given(st.integers(0, 51), coeffs)
def test_derivations_satisfy_leibniz(k, x):
    # [D, L_X] = L_{D X}
    D = lie.f4_derivation_matrices()[k]
    L = mult_matrix(x)
    DX = list(D.to_fractions() @ np.array(x, dtype=object))
    assert (D @ L - L @ D) == mult_matrix(DX)


def test_derivation_dimension_and_unit():
    ders = lie.f4_derivation_matrices()
    assert lie.f4_derivations().dim == 52 == len(ders)
    e = np.array(unit_coords(), dtype=object)
    assert all(not any(D.to_fractions() @ e) for D in ders)


def test_ambient_dimensions():
    assert suites.algebra("e6").dim == 78
    assert suites.algebra("e7").dim == 133


@pytest.mark.parametrize("name,dims", [("f4", (36, 24, 16)), ("e6", (46, 38, 22)), ("e7", (69, 69, 37))])
def test_fixed_dimensions(name, dims):
    assert tuple(suites.fixed(name, w).dim for w in ("s", "g", "sg")) == dims


@settings(max_examples=10)
@given(st.integers(0, 2 ** 32 - 1))
def test_e7_elements_exponentiate_into_e7(seed):
    rng = np.random.default_rng(seed)
    ops = suites.algebra("e7").basis_ops()
    idx = rng.choice(len(ops), size=6, replace=False)
    X = LinearOperator.zero("PC", False)
    for i in idx:
        X = X + ops[i].to_float().scale(rng.standard_normal() * 0.4)
    assert groups.is_e7(matrix_exp(X))


@settings(max_examples=10)
@given(st.integers(0, 2 ** 32 - 1))
def test_e7_elements_are_skew_for_the_symplectic_form(seed):
    rng = np.random.default_rng(seed)
    ops = suites.algebra("e7").basis_ops()
    X = ops[int(rng.integers(len(ops)))].to_float()
    P, Q = (FreudenthalVector.from_coords(rng.standard_normal(112)) for _ in range(2))
    assert abs(skew_form(P.apply(X), Q) + skew_form(P, Q.apply(X))) <= 1e-9


def test_jacobi_on_sampled_triples():
    rng = np.random.default_rng(7)
    ops = [op.to_float() for op in suites.algebra("e7").basis_ops()]
    for _ in range(5):
        a, b, c = (ops[i] for i in rng.choice(len(ops), 3, replace=False))
        J = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
        assert J.norm_inf() <= 1e-9


def test_phi_action_validates_inputs():
    with pytest.raises(ValueError):
        lie.phi_action(LinearOperator.identity("J"))
    with pytest.raises(TypeError):
        lie.phi_action(LinearOperator.identity("JC", False), exact=True)


def test_vee_of_unit_vanishes_on_unit():
    e = [1, 1, 1] + [0] * 24
    assert lie.vee(e, e).is_zero()


@pytest.mark.parametrize("fid", lie.FAMILY_IDS)
def test_family_dimension_and_fixed_points(fid):
    fam = lie.family_subalgebra(fid)
    assert fam.dim == lie.FAMILY_DIMS[fid]
    s, g = sigma_pc(), gamma_pc()
    for op in fam.basis_ops():
        assert op.bracket(s).is_zero() and op.bracket(g).is_zero()
        for P in lie.family_fixed_points(fid).values():
            assert not any(op.apply(np.array(P.coords, dtype=object)))


def test_family_lookup_rejects_unknown():
    with pytest.raises(KeyError):
        lie.family_subalgebra("L3_3")


def test_families_lie_in_the_fixed_subalgebra():
    fixed = suites.fixed("e7", "sg")
    for fid in lie.FAMILY_IDS:
        assert all(fixed.contains(op) for op in lie.family_subalgebra(fid).basis_ops())


def test_su2_generators():
    ops = [op for _, op in lie.su2_generators()]
    su2 = lie.SubalgebraBasis(ops, "e7", "su2")
    assert su2.dim == 3 and not su2.closure_failures()
    inv = lie.structure_invariants(su2)
    assert (inv.rank, inv.center_dim, inv.derived_dim) == (1, 0, 3)
    assert inv.killing_signature == (3, 0, 0)
    assert inv.compact
    L18 = lie.family_subalgebra("L3_18")
    assert not any(L18.contains(op) for op in ops)
    for op in ops:
        for b in L18.basis_ops():
            assert op.bracket(b).is_zero()


def test_invariants_of_abelian_algebra():
    op = lie.su2_generators()[0][1]
    inv = lie.structure_invariants(lie.SubalgebraBasis([op], "e7"))
    assert (inv.dim, inv.rank, inv.center_dim, inv.derived_dim) == (1, 1, 1, 0)
    assert inv.killing_signature == (0, 1, 0)
    assert inv.trace_form_signature == (1, 0, 0)


def test_invariants_of_fixed_subalgebras():
    f4, e6, e7 = (suites.invariants(n) for n in ("f4", "e6", "e7"))
    assert (f4.dim, f4.rank, f4.center_dim, f4.killing_signature) == (16, 4, 0, (16, 0, 0))
    assert (e6.dim, e6.rank, e6.center_dim, e6.killing_signature) == (22, 6, 1, (21, 1, 0))
    assert (e7.dim, e7.rank, e7.center_dim, e7.killing_signature) == (37, 7, 0, (37, 0, 0))
    for inv in (f4, e6, e7):
        assert inv.compact and inv.ambient_killing_negative_definite


def test_subalgebra_basis_validation():
    with pytest.raises(ValueError):
        lie.SubalgebraBasis([], "e7")
    with pytest.raises(ValueError):
        lie.SubalgebraBasis([LinearOperator.identity("J"), LinearOperator.identity("JC")], "e7")


def test_compact_element_has_expected_blocks():
    a = [Fraction(0)] * 54
    a[0] = Fraction(1)
    M = lie.compact_e7_element(None, a).mat.to_fractions()
    # eta -> A in X, and xi picks up (A, Y)
    assert M[0, 110] == 1 and M[108, 54] == 1


def test_phi_of_zero_is_zero():
    assert lie.phi_action(None, None, None, 0).is_zero()
