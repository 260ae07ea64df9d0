"""Constructive transitivity on the three spheres."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exlie import groups, orbits
from exlie.freudenthal import VSpacePoint, gamma_pc, project, sample_sphere, sigma_pc
from exlie.linalg.operator import LinearOperator

seeds = st.integers(0, 2 ** 32 - 1)


@pytest.mark.parametrize("tag", ["V6", "V7", "V8"])
@given(seed=seeds)
def test_random_points_reach_the_canonical_point(tag, seed):
    p = sample_sphere(tag, seed)
    c = orbits.CANONICALIZERS[tag](p)
    assert c.residual <= 1e-9
    assert len(c.word) <= orbits.MAX_WORD[tag]
    assert orbits.mu_norm_drift(c) <= 1e-9
    # the product of the word, applied in one go, agrees with the step-by-step points
    assert p.embed().apply(c.product()).distance(c.target) <= 1e-9


@pytest.mark.parametrize("tag", ["V6", "V7", "V8"])
def test_word_operators_are_in_the_subgroup(tag):
    c = orbits.CANONICALIZERS[tag](sample_sphere(tag, 11))
    for s in c.word:
        T = s.operator()
        assert groups.is_e7(T)
        assert T.bracket(sigma_pc(False)).norm_inf() <= 1e-12
        assert T.bracket(gamma_pc(False)).norm_inf() <= 1e-12


def test_canonical_points_have_short_words():
    assert orbits.canonicalize_s7(orbits.s7_target()).word == []
    w = orbits.canonicalize_s7(orbits.s6_target()).word
    assert [s.generator for s in w] == ["alpha"] and math.isclose(w[0].param[0], -math.pi / 4)
    assert orbits.canonicalize_s6(orbits.s6_target()).word == []
    assert orbits.canonicalize_s5(orbits.s5_target()).word == []


def test_s5_branches():
    # h = 0 skips the alpha1~ step, xi = 0 needs it
    for p in (VSpacePoint("V6", 1.0, (0, 0, 0, 0)), VSpacePoint("V6", 0j, (0, 0.6, 0, 0.8)),
              VSpacePoint("V6", -1j, (0, 0, 0, 0))):
        c = orbits.canonicalize_s5(p)
        assert c.residual <= 1e-12
    c = orbits.canonicalize_s5(VSpacePoint("V6", 1.0, (0, 0, 0, 0)))
    assert [s.generator for s in c.word] == ["alpha23~"]


def test_s6_branch_with_real_xi():
    c = orbits.canonicalize_s6(VSpacePoint("V7", 0.6, (0, 0, 0, 0), 0.8))
    assert c.residual <= 1e-12


def test_s7_pure_eta_point():
    c = orbits.canonicalize_s7(VSpacePoint("V8", 0j, (0, 0, 0, 0), 1j))
    assert c.residual <= 1e-12


def test_lower_points_accepted_by_larger_spheres():
    p = sample_sphere("V6", 3)
    assert orbits.canonicalize_s7(p).residual <= 1e-9
    assert orbits.canonicalize_s6(p.embed()).residual <= 1e-9


def test_non_unit_points_rejected():
    with pytest.raises(orbits.NormError):
        orbits.canonicalize_s5(VSpacePoint("V6", 2.0, (0, 0, 0, 0)))
    with pytest.raises(orbits.NormError):
        orbits.canonicalize_s7(VSpacePoint("V8", 0.5, (0, 0, 0, 0), 0.5))


def test_word_serialisation():
    c = orbits.canonicalize_s7(sample_sphere("V8", 5))
    again = [orbits.WordStep.from_dict(d) for d in c.word_dicts()]
    assert again == c.word
    acc = LinearOperator.identity("PC", False)
    for s in again:
        acc = s.operator() @ acc
    assert acc.residual(c.product()) <= 1e-12
    with pytest.raises(ValueError):
        orbits.WordStep("beta", (0.1,)).operator()


def test_points_stay_on_the_sphere():
    c = orbits.canonicalize_s7(sample_sphere("V8", 9))
    assert all(abs(project(p, "V8").mu_norm() - 1) <= 1e-9 for p in c.points)
    assert c.final == c.points[-1]


def test_s6_without_eta_runs_the_s5_path():
    p = VSpacePoint("V7", 0.6, (0, 0.8, 0, 0), 0.0)
    c = orbits.canonicalize_s6(p)
    assert c.residual <= 1e-12
    assert c.word[0].generator == "alpha23" and c.word[-1].generator == "alpha23"


def test_s6_from_the_s5_target():
    c = orbits.canonicalize_s6(orbits.s5_target())
    assert c.residual <= 1e-12
    last = c.word[-1]
    assert last.generator == "alpha23" and math.isclose(last.param[0], -math.pi / 4)
