"""Quaternions, octonions and their complexifications, with exact coordinates."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exlie.scalars import (
    Complexified,
    Octonion,
    Quaternion,
    gamma_oct,
    oct_conj,
    oct_inner,
    oct_mul,
    octonion_basis,
)

small = st.integers(-6, 6)
quats = st.builds(Quaternion, small, small, small, small)
octs = st.lists(small, min_size=8, max_size=8).map(Octonion.from_coords)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _quat_oracle(p, q):
    # Hamilton product from its 4x4 left-multiplication matrix
    a, b, c, d = p
    L = [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
    return tuple(_dot(row, q) for row in L)


@given(quats, quats)
def test_quaternion_product_matches_matrix_form(p, q):
    assert (p * q).coords() == _quat_oracle(p.coords(), q.coords())


@given(quats, quats, quats)
def test_quaternions_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(quats, quats)
def test_quaternion_norm_multiplicative(p, q):
    assert (p * q).norm2() == p.norm2() * q.norm2()


@given(octs, octs)
def test_octonion_norm_multiplicative(x, y):
    n = lambda z: _dot(z.coords(), z.coords())
    assert n(oct_mul(x, y)) == n(x) * n(y)


@given(octs, octs)
def test_octonion_alternative(x, y):
    assert (x * x) * y == x * (x * y)
    assert (y * x) * x == y * (x * x)


@given(octs, octs, octs)
def test_moufang_identity(x, y, z):
    assert (x * y) * (z * x) == x * ((y * z) * x)


@given(octs, octs)
def test_conjugation_reverses_products(x, y):
    assert oct_conj(x * y) == oct_conj(y) * oct_conj(x)


@given(octs, octs)
def test_inner_product_is_polarised_norm(x, y):
    s = x + y
    assert 2 * oct_inner(x, y) == _dot(s.coords(), s.coords()) - _dot(x.coords(), x.coords()) - _dot(y.coords(), y.coords())


@given(octs, octs)
def test_gamma_is_an_automorphism(x, y):
    assert gamma_oct(x * y) == gamma_oct(x) * gamma_oct(y)
    assert gamma_oct(gamma_oct(x)) == x


def test_gamma_fixes_quaternions_and_negates_e4_part():
    for k in range(8):
        e = Octonion.unit(k)
        assert gamma_oct(e) == (e if k < 4 else -e)


def test_octonions_not_associative():
    e1, e2, e4 = (Octonion.unit(k) for k in (1, 2, 4))
    assert (e1 * e2) * e4 == -(e1 * (e2 * e4))


def test_imaginary_units_square_to_minus_one_and_anticommute():
    basis = octonion_basis()
    one = Octonion.unit(0)
    for i in range(1, 8):
        assert basis[i] * basis[i] == -one
        for j in range(1, 8):
            if i != j:
                assert basis[i] * basis[j] == -(basis[j] * basis[i])


def test_fraction_coordinates_stay_exact():
    x = Octonion.from_coords([Fraction(1, 3)] * 8)
    c = (x * x).coords()
    assert all(isinstance(v, (int, Fraction)) for v in c)
    assert c[0] == -Fraction(6, 9)


def test_complex_unit_is_distinct_from_octonion_units():
    e1 = Octonion.unit(1)
    ie1 = Complexified(Octonion(), e1)
    sq = ie1 * ie1
    assert sq.re == Octonion.unit(0) and sq.im == Octonion()


@given(octs, octs)
def test_tau_is_an_involution(u, v):
    z = Complexified(u, v)
    assert z.tau().tau() == z
    assert z.tau() == Complexified(u, -v)


def test_from_coords_rejects_wrong_length():
    with pytest.raises(ValueError):
        Octonion.from_coords([0] * 7)


def test_basic_values():
    one, e1, e2, e3, e4 = (Octonion.unit(k) for k in (0, 1, 2, 3, 4))
    x = Octonion.from_coords(range(8))
    assert one * x == x == x * one
    assert e4 * e4 == -one
    assert e1 * e2 == e3
    assert oct_conj(e4) == -e4
    assert oct_inner(e1, e1) == 1
    p = e1 * e4
    assert oct_inner(p, p) == 1


def test_complexified_values():
    u = Octonion.unit(3)
    assert Complexified(u, Octonion()).re == u and Complexified(u).im == Octonion()
    i1 = Complexified(Octonion(), Octonion.unit(0))
    assert i1.tau() == -i1
