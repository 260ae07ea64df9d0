"""Constructive transitivity on the spheres S^5 in V6, S^6 in V7 and S^7 in V8.

Each canonicalizer returns a word of one-parameter subgroup elements whose
product moves the given point to the stratum's canonical point:

* S^5 -> (i(E2 + E3), 0, 0, 0)
* S^6 -> (0, -i E1, 0, i)
* S^7 -> (0, E1, 0, 1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import groups
from .freudenthal import (
    E1_tilde,
    FreudenthalVector,
    VSpacePoint,
    mu_norm,
    project,
)
from .linalg.operator import LinearOperator

BRANCH_TOL = 1e-12


class NormError(ValueError):
    pass


@dataclass(frozen=True)
class WordStep:
    """One generator: alpha23~(t), alpha1~(a), alpha23(a) = alpha2(a) alpha3(a) or alpha(t)."""

    generator: str
    param: tuple

    def operator(self) -> LinearOperator:
        if self.generator == "alpha23~":
            return groups.alpha23_tilde(self.param[0])
        if self.generator == "alpha1~":
            return groups.alpha1_tilde(np.array(self.param))
        if self.generator == "alpha23":
            return groups.alpha23(self.param[0])
        if self.generator == "alpha":
            return groups.alpha_diag(self.param[0])
        raise ValueError(f"unknown generator {self.generator!r}")

    def to_dict(self) -> dict:
        p = [float(x) for x in self.param]
        return {"generator": self.generator, "param": p[0] if len(p) == 1 else p}

    @classmethod
    def from_dict(cls, d: dict) -> "WordStep":
        p = d["param"]
        return cls(d["generator"], tuple(p) if isinstance(p, list) else (p,))


@dataclass
class Canonicalization:
    word: list
    residual: float
    target: FreudenthalVector
    points: list = field(default_factory=list)  # the start point and every intermediate point

    @property
    def final(self) -> FreudenthalVector:
        return self.points[-1]

    def word_dicts(self) -> list[dict]:
        return [s.to_dict() for s in self.word]

    def product(self) -> LinearOperator:
        """The group element w_n ... w_1."""
        acc = LinearOperator.identity("PC", False)
        for s in self.word:
            acc = s.operator() @ acc
        return acc


def s5_target() -> FreudenthalVector:
    X = np.zeros(27, dtype=complex)
    X[1] = X[2] = 1j
    return FreudenthalVector.from_parts(X)


def s6_target() -> FreudenthalVector:
    Y = np.zeros(27, dtype=complex)
    Y[0] = -1j
    return FreudenthalVector.from_parts(None, Y, 0, 1j)


def s7_target() -> FreudenthalVector:
    return FreudenthalVector.from_coords(E1_tilde().array())


def _as_point(P, tag: str) -> FreudenthalVector:
    if isinstance(P, VSpacePoint):
        if P.tag != tag:
            P = project(P.embed(), tag)
        return P.embed()
    return P


def _check_norm(P: FreudenthalVector, tag: str, tol: float):
    n = mu_norm(project(P, tag, tol=max(tol, 1e-9)))
    if abs(n - 1.0) > tol:
        raise NormError(f"point is not on the unit sphere of {tag} (mu-norm {n:.12g})")


class _Runner:
    def __init__(self, P: FreudenthalVector):
        self.points = [P]
        self.word: list[WordStep] = []

    @property
    def current(self) -> FreudenthalVector:
        return self.points[-1]

    def step(self, generator: str, *param):
        if generator != "alpha1~" and abs(param[0]) <= BRANCH_TOL:
            return  # the identity element
        s = WordStep(generator, tuple(float(x) + 0.0 for x in param))
        self.word.append(s)
        self.points.append(self.current.apply(s.operator()))


def _at(run: _Runner, target: FreudenthalVector) -> bool:
    """A stage leaves its own canonical point alone (empty sub-word)."""
    return run.current.distance(target) <= BRANCH_TOL


def _s5(run: _Runner):
    if _at(run, s5_target()):
        return
    X = run.current.parts()[0]
    xi = X[1]
    run.step("alpha23~", -math.atan2(xi.imag, xi.real))
    X = run.current.parts()[0]
    h = X[3:7].real
    nh = float(np.linalg.norm(h))
    if nh > BRANCH_TOL:
        run.step("alpha1~", *(math.pi * h / (2 * nh)))
    xi2 = run.current.parts()[0][1]
    if abs(abs(xi2) - 1.0) > 1e-9:
        raise NormError(f"intermediate xi' is not a unit complex number (|xi'| = {abs(xi2):.12g})")
    theta = math.atan2(xi2.imag, xi2.real) % (2 * math.pi)
    if theta > 2 * math.pi - BRANCH_TOL:
        theta = 0.0
    run.step("alpha23~", -theta)
    run.step("alpha23~", math.pi / 2)


def _s6(run: _Runner):
    if _at(run, s6_target()):
        return
    X, Y, _, _ = run.current.parts()
    xi = X[1]
    eta = (-1j * Y[0]).real
    denom = np.conj(xi) - xi
    if abs(denom) <= BRANCH_TOL:
        a = math.pi / 4
    else:
        ratio = 2j * eta / denom
        if abs(ratio.imag) > 1e-12 * max(1.0, abs(ratio)):
            raise ArithmeticError("tan 2a is not real")
        a = 0.5 * (math.atan(ratio.real) % math.pi)
    run.step("alpha23", a)
    _s5(run)
    run.step("alpha23", -math.pi / 4)


def _s7(run: _Runner):
    if _at(run, s7_target()):
        return
    eta = run.current.parts()[1][0]
    # e^{-2it} eta in iR has period pi/2 in t; take the representative in [-pi/4, pi/4)
    t = (math.atan2(eta.imag, eta.real) - math.pi / 2) / 2
    t = (t + math.pi / 4) % (math.pi / 2) - math.pi / 4
    run.step("alpha", t)
    _s6(run)
    run.step("alpha", -math.pi / 4)


def _finish(run: _Runner, target: FreudenthalVector) -> Canonicalization:
    return Canonicalization(run.word, run.current.distance(target), target, run.points)


def canonicalize_s5(P, tol: float = 1e-9) -> Canonicalization:
    """Move a point of S^5 to (i(E2 + E3), 0, 0, 0)."""
    P = _as_point(P, "V6")
    _check_norm(P, "V6", tol)
    run = _Runner(P)
    _s5(run)
    return _finish(run, s5_target())


def canonicalize_s6(P, tol: float = 1e-9) -> Canonicalization:
    """Move a point of S^6 to (0, -i E1, 0, i)."""
    P = _as_point(P, "V7")
    _check_norm(P, "V7", tol)
    run = _Runner(P)
    _s6(run)
    return _finish(run, s6_target())


def canonicalize_s7(P, tol: float = 1e-9) -> Canonicalization:
    """Move a point of S^7 to (0, E1, 0, 1)."""
    P = _as_point(P, "V8")
    _check_norm(P, "V8", tol)
    run = _Runner(P)
    _s7(run)
    return _finish(run, s7_target())


CANONICALIZERS = {"V6": canonicalize_s5, "V7": canonicalize_s6, "V8": canonicalize_s7}
MAX_WORD = {"V6": 4, "V7": 6, "V8": 8}


def mu_norm_drift(c: Canonicalization) -> float:
    """max |mu-norm - 1| over every point visited (all lie in V8)."""
    return max(abs(mu_norm(project(p, "V8")) - 1.0) for p in c.points)
