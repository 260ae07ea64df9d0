"""Named verification suites.

Every check is a small function registered under a suite.  A check receives a
:class:`Context` (configuration plus a per-check seed derived from the root
seed and the check id) and returns an :class:`Outcome`.  :func:`run_suite`
runs the checks, optionally on a thread pool, and returns a
:class:`SuiteReport` whose checks are sorted by id.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

import numpy as np

from . import __version__, calibration, freudenthal as fr, groups, lie, orbits
from .jordan import gamma_operator, sigma_operator
from .linalg.expm import expm_array, matrix_exp
from .linalg.operator import LinearOperator
from .linalg.span import ExactSpan

SUITES = ("f4", "e6", "e7-subalgebras", "e7-exponentials", "e7-spheres", "e7-theorem", "tables")
BACKENDS = ("exact", "float", "auto")
EXACT_TOL = 1e-12  # homomorphism, kernel and fixed-point residuals


@dataclass(frozen=True)
class Config:
    seed: int = 42
    samples: int = 50
    sphere_samples: int = 100
    tol: float = 1e-9
    backend: str = "auto"
    jobs: int = 1

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}")
        if self.samples < 1 or self.sphere_samples < 1 or self.jobs < 1:
            raise ValueError("samples, sphere_samples and jobs must be positive")
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise ValueError("tol must be a positive finite number")


@dataclass
class CheckResult:
    id: str
    description: str
    reference: str
    status: str  # pass | fail | skip
    measured: Any
    expected: Any
    tolerance: float
    runtime_ms: float
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return _jsonable(asdict(self))


@dataclass
class SuiteReport:
    suite: str
    seed: int
    backend: dict
    calibration: dict
    checks: list
    status: str
    version: str = __version__

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, runtimes: bool = True) -> dict:
        checks = [c.as_dict() for c in self.checks]
        if not runtimes:
            for c in checks:
                c.pop("runtime_ms")
        return {"suite": self.suite, "seed": self.seed, "backend": self.backend,
                "calibration": self.calibration, "checks": checks, "status": self.status,
                "version": self.version}

    def to_json(self, runtimes: bool = True) -> str:
        return json.dumps(self.as_dict(runtimes), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        lines = [f"# Suite `{self.suite}`: {self.status.upper()}", "",
                 f"- seed: {self.seed}", f"- backend: {json.dumps(self.backend, sort_keys=True)}",
                 f"- calibration: {json.dumps(self.calibration, sort_keys=True)}",
                 f"- version: {self.version}", "",
                 "| id | status | measured | expected | tolerance | reference | ms |",
                 "|---|---|---|---|---|---|---|"]
        for c in self.checks:
            d = c.as_dict()
            cells = [d["id"], d["status"], _short(d["measured"]), _short(d["expected"]),
                     f"{d['tolerance']:g}", d["reference"], f"{d['runtime_ms']:.0f}"]
            lines.append("| " + " | ".join(str(x).replace("|", "\\|") for x in cells) + " |")
        return "\n".join(lines) + "\n"


@dataclass
class Outcome:
    measured: Any
    expected: Any
    tolerance: float = 0.0
    passed: bool | None = None  # None: decided by :func:`within`
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Context:
    config: Config
    seed: int

    @property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    @property
    def exact_dims(self) -> bool:
        return self.config.backend != "float"


@dataclass(frozen=True)
class CheckSpec:
    id: str
    suite: str
    description: str
    reference: str
    fn: Callable[[Context], Outcome]


REGISTRY: dict[str, CheckSpec] = {}


def check(suite: str, cid: str, description: str, reference: str):
    def deco(fn):
        if cid in REGISTRY:
            raise ValueError(f"duplicate check id {cid}")
        REGISTRY[cid] = CheckSpec(cid, suite, description, reference, fn)
        return fn
    return deco


def suite_checks(name: str) -> list[CheckSpec]:
    if name == "all":
        return sorted(REGISTRY.values(), key=lambda s: s.id)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return sorted((s for s in REGISTRY.values() if s.suite == name), key=lambda s: s.id)


def check_seed(root: int, cid: str) -> int:
    digest = hashlib.sha256(f"{root}:{cid}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


# ---------------------------------------------------------------------------
# comparison and serialization helpers
# ---------------------------------------------------------------------------


def within(measured, expected, tol: float) -> bool:
    if isinstance(expected, dict):
        return isinstance(measured, dict) and measured.keys() == expected.keys() and all(
            within(measured[k], expected[k], tol) for k in expected)
    if isinstance(expected, (list, tuple)):
        return isinstance(measured, (list, tuple)) and len(measured) == len(expected) and all(
            within(m, e, tol) for m, e in zip(measured, expected))
    if isinstance(expected, bool) or expected is None or isinstance(expected, str):
        return measured == expected
    if isinstance(measured, bool):
        return False
    return abs(measured - expected) <= tol


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _short(x) -> str:
    s = json.dumps(x, sort_keys=True)
    return s if len(s) <= 60 else s[:57] + "..."


def _residual_outcome(value: float, tol: float, **details) -> Outcome:
    return Outcome(float(value), 0.0, tol, details=details)


# ---------------------------------------------------------------------------
# shared, cached computations
# ---------------------------------------------------------------------------

_SPACE = {"f4": "J", "e6": "JC", "e7": "PC"}


@lru_cache(maxsize=None)
def algebra(name: str) -> lie.SubalgebraBasis:
    return {"f4": lie.f4_derivations, "e6": lie.e6_algebra, "e7": lie.e7_algebra}[name]()


@lru_cache(maxsize=None)
def fixed(name: str, which: str) -> lie.SubalgebraBasis:
    sp = _SPACE[name]
    invs = [sigma_operator(sp) if c == "s" else gamma_operator(sp) for c in which]
    return lie.fixed_subalgebra(algebra(name), invs)


@lru_cache(maxsize=None)
def invariants(name: str) -> lie.StructureInvariants:
    return lie.structure_invariants(fixed(name, "sg"), ambient=algebra(name))


def span_dim(ops, exact: bool) -> int:
    if exact:
        return ExactSpan(list(ops)).dim
    M = np.stack([op.to_float().dense().ravel() for op in ops])
    return int(np.linalg.matrix_rank(M, tol=1e-8 * max(1.0, float(np.max(np.abs(M))))))


def _dim_outcome(ctx: Context, basis: lie.SubalgebraBasis, expected: int) -> Outcome:
    d = basis.dim if ctx.exact_dims else span_dim(basis.basis_ops(), False)
    return Outcome(d, expected, 0.0, details={"route": "exact" if ctx.exact_dims else "float"})


def _identity(op: LinearOperator) -> LinearOperator:
    return LinearOperator.identity(op.basis, op.exact)


def _commutator_residual(a: LinearOperator, b: LinearOperator) -> float:
    return (a @ b).residual(b @ a)


def _one(exact: bool = True):
    return [Fraction(1), Fraction(0), Fraction(0), Fraction(0)] if exact else [1.0, 0.0, 0.0, 0.0]


def _neg(q):
    return [-x for x in q]


def _sample_pairs(rng: np.random.Generator, n: int, count: int) -> list[tuple[int, int]]:
    pairs = set()
    while len(pairs) < min(count, n * (n - 1) // 2):
        i, j = sorted(int(x) for x in rng.choice(n, 2, replace=False))
        pairs.add((i, j))
    return sorted(pairs)


def _closure_outcome(ctx: Context, basis: lie.SubalgebraBasis, count: int) -> Outcome:
    pairs = _sample_pairs(ctx.rng, basis.dim, count)
    bad = basis.closure_failures(pairs)
    return Outcome(len(bad), 0, 0.0, details={"pairs": len(pairs), "failures": bad[:5]})


def _invariant_outcome(name: str, rank: int, center: int) -> Outcome:
    inv = invariants(name)
    measured = {"rank": inv.rank, "center_dim": inv.center_dim,
                "compact": bool(inv.ambient_killing_negative_definite) and inv.compact}
    expected = {"rank": rank, "center_dim": center, "compact": True}
    return Outcome(measured, expected, 0.0, details=inv.as_dict())


# group samplers -----------------------------------------------------------

def _sample_phi(rng):
    return groups.random_unit_quaternion(rng), groups.random_sp(3, rng)


def _mul_phi(g, h):
    return groups.quat_mul(g[0], h[0]), groups.quat_matmul(g[1], h[1])


def _sample_phi4(rng):
    return groups.random_unit_quaternion(rng), groups.random_unit_quaternion(rng), groups.random_sp(2, rng)


def _mul_phi4(g, h):
    return groups.quat_mul(g[0], h[0]), groups.quat_mul(g[1], h[1]), groups.quat_matmul(g[2], h[2])


def _sample_phi6(rng):
    return groups.random_unit_quaternion(rng), groups.random_su(6, rng)


def _mul_phi6(g, h):
    return groups.quat_mul(g[0], h[0]), g[1] @ h[1]


def _random_su2(rng):
    return groups.random_su(2, rng)


def _block_su2_u4(rng) -> np.ndarray:
    """Random element of S(U(2) x U(4))."""
    A = groups.random_su(2, rng) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    B = groups.random_su(4, rng)
    U = np.zeros((6, 6), dtype=complex)
    U[:2, :2], U[2:, 2:] = A, B
    return U @ np.diag([1, 1, 1, 1, 1, 1 / np.linalg.det(U)])


def _max_residual(ops_a, ops_b) -> float:
    return max((a.residual(b) for a, b in zip(ops_a, ops_b)), default=0.0)


# ---------------------------------------------------------------------------
# f4
# ---------------------------------------------------------------------------


@check("f4", "f4.derivations.dim", "dimension of Der(J) by exact nullspace", "dim Der(J) = 52")
def _(ctx):
    return _dim_outcome(ctx, algebra("f4"), 52)


@check("f4", "f4.derivations.kill_unit", "every derivation annihilates the unit E", "D(E) = 0")
def _(ctx):
    from .jordan import unit_coords
    E = np.array(unit_coords(), dtype=object)
    bad = sum(1 for op in algebra("f4").basis_ops() if any(op.apply(E)))
    return Outcome(bad, 0)


@check("f4", "f4.derivations.closure", "bracket closure of Der(J) on sampled pairs", "Der(J) is a Lie algebra")
def _(ctx):
    return _closure_outcome(ctx, algebra("f4"), 4 * ctx.config.samples)


@check("f4", "f4.fixed.sigma_gamma.dim", "dim of the sigma,gamma-fixed subalgebra of f4",
       "dim f4^{sigma,gamma} = 16 = 3 + 3 + 10")
def _(ctx):
    return _dim_outcome(ctx, fixed("f4", "sg"), 16)


@check("f4", "f4.fixed.sigma_gamma.invariants", "rank, center and compactness of f4^{sigma,gamma}",
       "f4^{sigma,gamma} = sp(1) + sp(1) + sp(2)")
def _(ctx):
    return _invariant_outcome("f4", 4, 0)


@check("f4", "f4.involutions.algebra", "sigma^2 = gamma^2 = 1 and sigma gamma = gamma sigma on J, J^C, P^C",
       "sigma and gamma are commuting involutions")
def _(ctx):
    fails = []
    for sp in ("J", "JC", "PC"):
        S, G = sigma_operator(sp), gamma_operator(sp)
        I = LinearOperator.identity(sp)
        for name, lhs, rhs in (("s^2", S @ S, I), ("g^2", G @ G, I), ("sg", S @ G, G @ S)):
            if not lhs.equals(rhs):
                fails.append(f"{sp}:{name}")
    return Outcome(len(fails), 0, details={"failures": fails})


@check("f4", "f4.membership.involutions", "is_f4 residual of sigma and gamma (exact)", "sigma, gamma in F4")
def _(ctx):
    reps = {n: groups.f4_report(op) for n, op in (("sigma", sigma_operator("J")), ("gamma", gamma_operator("J")))}
    res = max(r.residual for r in reps.values())
    return Outcome(float(res), 0.0, 0.0, details={k: float(v.residual) for k, v in reps.items()})


@check("f4", "f4.membership.controls", "is_f4 accepts the identity and rejects 2 * identity",
       "F4 preserves the Jordan product")
def _(ctx):
    I = LinearOperator.identity("J")
    return Outcome([groups.is_f4(I, ctx.config.tol), groups.is_f4(I.scale(2), ctx.config.tol)], [True, False])


@check("f4", "f4.phi.sigma", "phi(-1, I1) equals sigma exactly", "sigma = phi(-1, I1)")
def _(ctx):
    op = groups.phi_f4_gamma(_neg(_one()), groups.I1)
    return Outcome(op.equals(sigma_operator("J")), True)


@check("f4", "f4.phi.identity", "phi(1, E) is the identity", "phi(1, E) = 1")
def _(ctx):
    op = groups.phi_f4_gamma(_one(), groups.quat_identity(3))
    return Outcome(op.equals(LinearOperator.identity("J")), True)


@check("f4", "f4.phi.membership", "random phi(p, A) lie in F4 and commute with gamma",
       "phi(p, A) in (F4)^gamma")
def _(ctx):
    rng = ctx.rng
    G = gamma_operator("J", exact=False)
    worst = 0.0
    for _ in range(ctx.config.samples):
        op = groups.phi_f4_gamma(*_sample_phi(rng))
        worst = max(worst, groups.f4_report(op).residual, _commutator_residual(op, G))
    return _residual_outcome(worst, ctx.config.tol)


@check("f4", "f4.phi.homomorphism", "phi(p1 p2, A1 A2) = phi(p1, A1) phi(p2, A2)", "phi is a homomorphism")
def _(ctx):
    r = groups.verify_homomorphism(lambda g: groups.phi_f4_gamma(*g), _sample_phi, ctx.config.samples,
                                   EXACT_TOL, _mul_phi, ctx.seed)
    return _residual_outcome(r.max_residual, EXACT_TOL, samples=r.samples)


@check("f4", "f4.phi4.kernel", "kernel of phi4 is {(1, 1, E), (-1, -1, -E)}",
       "Ker phi4 = {(1,1,E), (-1,-1,-E)}")
def _(ctx):
    E2 = groups.quat_identity(2)
    kernel = [(_one(), _one(), E2), (_neg(_one()), _neg(_one()), -E2)]
    r = groups.verify_kernel(lambda g: groups.phi4(*g), kernel, _sample_phi4, EXACT_TOL, ctx.config.samples, ctx.seed)
    return Outcome(max(r.kernel_residuals), 0.0, EXACT_TOL, passed=r.passed,
                   details={"kernel_residuals": r.kernel_residuals, "min_non_kernel_distance": r.min_non_kernel_distance})


@check("f4", "f4.phi4.homomorphism", "phi4 is multiplicative on random samples", "phi4 is a homomorphism")
def _(ctx):
    r = groups.verify_homomorphism(lambda g: groups.phi4(*g), _sample_phi4, ctx.config.samples,
                                   EXACT_TOL, _mul_phi4, ctx.seed)
    return _residual_outcome(r.max_residual, EXACT_TOL, samples=r.samples)


@check("f4", "f4.phi4.involutions", "phi4 commutes with sigma and gamma", "phi4 lands in (F4)^{sigma,gamma}")
def _(ctx):
    rng = ctx.rng
    S, G = sigma_operator("J", exact=False), gamma_operator("J", exact=False)
    worst = 0.0
    for _ in range(ctx.config.samples):
        op = groups.phi4(*_sample_phi4(rng))
        worst = max(worst, _commutator_residual(op, S), _commutator_residual(op, G))
    return _residual_outcome(worst, EXACT_TOL)


# ---------------------------------------------------------------------------
# e6
# ---------------------------------------------------------------------------


@check("e6", "e6.dim", "dimension of e6 = f4 + i(traceless real)~", "dim e6 = 78 = 52 + 26")
def _(ctx):
    return _dim_outcome(ctx, algebra("e6"), 78)


@check("e6", "e6.closure", "bracket closure of e6 on sampled pairs", "e6 is a Lie algebra")
def _(ctx):
    return _closure_outcome(ctx, algebra("e6"), 4 * ctx.config.samples)


@check("e6", "e6.fixed.sigma_gamma.dim", "dim of the sigma,gamma-fixed subalgebra of e6",
       "dim e6^{sigma,gamma} = 22 = 3 + 19")
def _(ctx):
    return _dim_outcome(ctx, fixed("e6", "sg"), 22)


@check("e6", "e6.fixed.sigma_gamma.invariants", "rank, center and compactness of e6^{sigma,gamma}",
       "e6^{sigma,gamma} = sp(1) + s(u(2) + u(4))")
def _(ctx):
    return _invariant_outcome("e6", 6, 1)


@check("e6", "e6.membership.gamma", "gamma acting on J^C lies in E6", "F4 is contained in E6")
def _(ctx):
    return _residual_outcome(groups.e6_report(gamma_operator("JC", exact=False)).residual, ctx.config.tol)


@check("e6", "e6.phi6.sigma", "phi6(-1, I2) equals sigma on J^C exactly", "sigma = phi6(-1, I2)")
def _(ctx):
    return Outcome(groups.phi6(_neg(_one()), groups.i2_matrix()).equals(sigma_operator("JC")), True)


@check("e6", "e6.phi6.identity", "phi6(1, E) is the identity", "phi6(1, E) = 1")
def _(ctx):
    return Outcome(groups.phi6(_one(), groups.exact_identity_c(6)).equals(LinearOperator.identity("JC")), True)


@check("e6", "e6.phi6.membership", "random phi6(p, A) pass the E6 membership test", "phi6(p, A) in E6")
def _(ctx):
    rng = ctx.rng
    worst = max(groups.e6_report(groups.phi6(*_sample_phi6(rng))).residual for _ in range(ctx.config.samples))
    return _residual_outcome(worst, ctx.config.tol)


@check("e6", "e6.phi6.kernel", "kernel of phi6 is {(1, E), (-1, -E)}", "Ker phi6 = {(1,E), (-1,-E)}")
def _(ctx):
    I6 = groups.exact_identity_c(6)
    kernel = [(_one(), I6), (_neg(_one()), groups.CMat(-I6.re, -I6.im))]
    r = groups.verify_kernel(lambda g: groups.phi6(*g), kernel, _sample_phi6, EXACT_TOL, ctx.config.samples, ctx.seed)
    return Outcome(max(r.kernel_residuals), 0.0, EXACT_TOL, passed=r.passed,
                   details={"kernel_residuals": r.kernel_residuals, "min_non_kernel_distance": r.min_non_kernel_distance})


@check("e6", "e6.phi6.homomorphism", "phi6 is multiplicative on random samples", "phi6 is a homomorphism")
def _(ctx):
    r = groups.verify_homomorphism(lambda g: groups.phi6(*g), _sample_phi6, ctx.config.samples,
                                   EXACT_TOL, _mul_phi6, ctx.seed)
    return _residual_outcome(r.max_residual, EXACT_TOL, samples=r.samples)


@check("e6", "e6.phi6.block_sigma", "phi6(p, A) commutes with sigma for A in S(U(2) x U(4))",
       "phi6 restricts to (E6)^{sigma,gamma}")
def _(ctx):
    rng = ctx.rng
    S = sigma_operator("JC", exact=False)
    worst = 0.0
    for _ in range(ctx.config.samples):
        op = groups.phi6(groups.random_unit_quaternion(rng), _block_su2_u4(rng))
        worst = max(worst, _commutator_residual(op, S))
    return _residual_outcome(worst, EXACT_TOL)


# ---------------------------------------------------------------------------
# e7 subalgebras
# ---------------------------------------------------------------------------


@check("e7-subalgebras", "e7.dim", "dimension of compact e7", "dim e7 = 133 = 78 + 54 + 1")
def _(ctx):
    return _dim_outcome(ctx, algebra("e7"), 133)


@check("e7-subalgebras", "e7.closure", "bracket closure of e7 on sampled pairs", "e7 is a Lie algebra")
def _(ctx):
    return _closure_outcome(ctx, algebra("e7"), 4 * ctx.config.samples)


@check("e7-subalgebras", "e7.fixed.sigma_gamma.dim", "dim of the sigma,gamma-fixed subalgebra of e7",
       "dim e7^{sigma,gamma} = 37")
def _(ctx):
    return _dim_outcome(ctx, fixed("e7", "sg"), 37)


@check("e7-subalgebras", "e7.fixed.sigma_gamma.invariants", "rank, center and compactness of e7^{sigma,gamma}",
       "e7^{sigma,gamma} = su(2) + so(4) + so(8)")
def _(ctx):
    return _invariant_outcome("e7", 7, 0)


def _family_dim_check(fid: str):
    expected = lie.FAMILY_DIMS[fid]

    @check("e7-subalgebras", f"e7.family.{fid}.dim", f"dimension of the {fid} family span",
           f"dim {fid} = {expected}")
    def _(ctx):
        return _dim_outcome(ctx, lie.family_subalgebra(fid), expected)

    @check("e7-subalgebras", f"e7.family.{fid}.structure",
           f"{fid}: exact closure, inside e7, commutes with sigma and gamma, fixes its points",
           f"{fid} is a subalgebra of the stated stabilizer")
    def _(ctx):
        F = lie.family_subalgebra(fid)
        ops = F.basis_ops()
        S, G = sigma_operator("PC"), gamma_operator("PC")
        pts = lie.family_fixed_points(fid)
        counts = {
            "closure": len(F.closure_failures()),
            "outside_e7": sum(1 for op in ops if not algebra("e7").contains(op)),
            "not_sigma_gamma_fixed": sum(1 for op in ops if not ((S @ op).equals(op @ S) and (G @ op).equals(op @ G))),
            "moves_point": sum(1 for op in ops for p in pts.values() if any(op.apply(p.array()))),
        }
        return Outcome(counts, {k: 0 for k in counts}, details={"points": sorted(pts)})


for _fid in lie.FAMILY_IDS:
    _family_dim_check(_fid)


@check("e7-subalgebras", "e7.family.L3_20.equals_fixed", "the L3_20 family spans e7^{sigma,gamma}",
       "L3_20 = e7^{sigma,gamma}")
def _(ctx):
    F, X = lie.family_subalgebra("L3_20"), fixed("e7", "sg")
    inside = all(X.contains(op) for op in F.basis_ops())
    return Outcome([inside, F.dim == X.dim], [True, True])


@check("e7-subalgebras", "e7.commuting_families", "[L3_2, L3_14] = 0 on all basis pairs",
       "[spin(4), spin(8)] = 0")
def _(ctx):
    A, B = lie.family_subalgebra("L3_2").basis_ops(), lie.family_subalgebra("L3_14").basis_ops()
    bad = sum(1 for a in A for b in B if not a.bracket(b).is_zero())
    return Outcome(bad, 0, details={"pairs": len(A) * len(B)})


@check("e7-subalgebras", "e7.union_span", "span(L3_2 + L3_14) equals L3_18", "spin(4) + spin(8) = L3_18")
def _(ctx):
    ops = lie.family_subalgebra("L3_2").basis_ops() + lie.family_subalgebra("L3_14").basis_ops()
    L18 = lie.family_subalgebra("L3_18")
    d = span_dim(ops, ctx.exact_dims)
    return Outcome([d, all(L18.contains(op) for op in ops)], [L18.dim, True])


@check("e7-subalgebras", "e7.su2_complement", "L3_18 and the su(2) generators span e7^{sigma,gamma}",
       "e7^{sigma,gamma} = su(2) + L3_18")
def _(ctx):
    X = fixed("e7", "sg")
    gens = [op for _, op in lie.su2_generators()]
    ops = lie.family_subalgebra("L3_18").basis_ops() + gens
    return Outcome([span_dim(ops, ctx.exact_dims), all(X.contains(op) for op in gens)], [37, True])


# ---------------------------------------------------------------------------
# e7 exponentials
# ---------------------------------------------------------------------------


@check("e7-exponentials", "exp.calibration", "the Phi constants, k_J ordering and lambda sign are pinned",
       "exactly one calibration candidate passes")
def _(ctx):
    cal = calibration.calibrate(ctx.config.tol)
    return Outcome([cal.converged, len(cal.passing)], [True, 1], details=cal.as_dict())


def _jc54(real27=None, imag27=None) -> list:
    r = list(real27) if real27 is not None else [0.0] * 27
    i = list(imag27) if imag27 is not None else [0.0] * 27
    return r + i


def _unit27(k: int, s: float = 1.0) -> list:
    v = [0.0] * 27
    v[k] = s
    return v


def _exp_alpha1(a) -> float:
    gen = lie.i_tilde([0, 0, 0, *a] + [0] * 20, exact=False)
    return matrix_exp(lie.phi_action(gen, None, None, 0, exact=False)).residual(groups.alpha1_tilde(a))


def _exp_alpha23_tilde(t: float) -> float:
    gen = lie.i_tilde([0, t, -t] + [0] * 24, exact=False)
    return matrix_exp(lie.phi_action(gen, None, None, 0, exact=False)).residual(groups.alpha23_tilde(t))


def _exp_alpha_k(k: int, a: float) -> float:
    A = _jc54(_unit27(k - 1, a))
    gen = lie.phi_action(None, A, [-x for x in A], 0, exact=False)
    return matrix_exp(gen).residual(groups.alpha_k(k, a))


def _exp_alpha(t: float) -> float:
    return matrix_exp(calibration.alpha_generator(t)).residual(groups.alpha_diag(t))


def _exp_su2(nu: float, a: complex) -> float:
    """exp Phi(2 nu E1 v E1, a E1, -tau a E1, nu) against phi(exp [[nu, a], [-tau a, -nu]]), nu imaginary."""
    nu = 1j * nu
    from . import cforms
    R, _ = cforms.c_parts(lie.vee(_unit27(0), _unit27(0), exact=False).dense())
    phi = LinearOperator(cforms.cform(2 * nu.real * R, 2 * nu.imag * R), "JC")
    z = np.zeros(27, dtype=complex)
    z[0] = a
    gen = lie.phi_action(phi, lie.complex_jc_vector(z), lie.complex_jc_vector(-np.conj(z)), nu, exact=False)
    U = expm_array(np.array([[nu, a], [-np.conj(a), -nu]]))
    return matrix_exp(gen).residual(groups.phi_su2(U))


def _exp_check(cid: str, description: str, reference: str, sampler: Callable, fn: Callable):
    @check("e7-exponentials", cid, description, reference)
    def _(ctx):
        calibration.calibrate(ctx.config.tol)
        rng = ctx.rng
        worst = max(fn(*sampler(rng)) for _ in range(ctx.config.samples))
        return _residual_outcome(worst, ctx.config.tol, samples=ctx.config.samples)


_exp_check("exp.alpha1_tilde", "alpha1~(a) = exp(i F1~(a)) for random quaternions a",
           "alpha1~(a) = exp i F1~(a)", lambda r: (r.standard_normal(4),), _exp_alpha1)
_exp_check("exp.alpha23_tilde", "alpha23~(t) = exp(i t (E2 - E3)~) for random t",
           "alpha23~(t) = exp i t (E2 - E3)~", lambda r: (r.uniform(-2 * np.pi, 2 * np.pi),), _exp_alpha23_tilde)
_exp_check("exp.alpha2", "alpha2(a) = exp Phi(0, a E2, -a E2, 0) for random a",
           "alpha_k(a) = exp Phi_k(a)", lambda r: (2, r.uniform(-np.pi, np.pi)), _exp_alpha_k)
_exp_check("exp.alpha3", "alpha3(a) = exp Phi(0, a E3, -a E3, 0) for random a",
           "alpha_k(a) = exp Phi_k(a)", lambda r: (3, r.uniform(-np.pi, np.pi)), _exp_alpha_k)
_exp_check("exp.alpha", "alpha(t) = exp Phi(2itE1 v E1, 0, 0, -2it) for random t",
           "alpha(t) = exp Phi(2itE1 v E1, 0, 0, -2it)", lambda r: (r.uniform(-np.pi, np.pi),), _exp_alpha)
_exp_check("exp.phi_su2", "phi(exp X) = exp Phi(2 nu E1 v E1, a E1, -tau a E1, nu) for X in su(2)",
           "phi(A) = exp Phi", lambda r: (r.normal(), complex(*r.normal(size=2))), _exp_su2)


@check("e7-exponentials", "exp.alpha_k_commute", "alpha2(a) and alpha3(b) commute", "alpha2, alpha3 commute")
def _(ctx):
    rng = ctx.rng
    worst = 0.0
    for _ in range(ctx.config.samples):
        a, b = rng.uniform(-np.pi, np.pi, 2)
        worst = max(worst, _commutator_residual(groups.alpha_k(2, a), groups.alpha_k(3, b)))
    return _residual_outcome(worst, ctx.config.tol)


@check("e7-exponentials", "exp.membership", "closed forms, lambda, sigma, gamma and exp(random e7) pass is_e7",
       "all constructed elements lie in E7")
def _(ctx):
    calibration.calibrate(ctx.config.tol)
    rng = ctx.rng
    e7 = algebra("e7").basis_ops()
    ops = {
        "lambda": fr.lambda_operator(False, calibration.calibrate(ctx.config.tol).lambda_sign),
        "sigma": fr.sigma_pc(False), "gamma": fr.gamma_pc(False),
        "alpha1~": groups.alpha1_tilde(rng.standard_normal(4)),
        "alpha23~": groups.alpha23_tilde(float(rng.uniform(-np.pi, np.pi))),
        "alpha2": groups.alpha_k(2, float(rng.uniform(-np.pi, np.pi))),
        "alpha3": groups.alpha_k(3, float(rng.uniform(-np.pi, np.pi))),
        "alpha": groups.alpha_diag(float(rng.uniform(-np.pi, np.pi))),
        "phi(A)": groups.phi_su2(_random_su2(rng)),
    }
    for k in range(10):
        c = rng.standard_normal(len(e7)) / math.sqrt(len(e7))
        X = sum((op.to_float().scale(float(x)) for op, x in zip(e7, c)), LinearOperator.zero("PC", False))
        ops[f"exp{k}"] = matrix_exp(X)
    res = {k: groups.e7_report(op, ctx.config.tol).residual for k, op in ops.items()}
    return _residual_outcome(max(res.values()), ctx.config.tol, residuals=res)


@check("e7-exponentials", "exp.alpha1_tilde.period", "alpha1~(a) with |a| = 2 pi fixes the xi and x1 blocks",
       "cos|a| = 1, sin|a| = 0")
def _(ctx):
    a = ctx.rng.standard_normal(4)
    a = 2 * np.pi * a / np.linalg.norm(a)
    M = groups.alpha1_tilde_jc(a).dense()
    idx = [j for base in (0, 27) for j in [base + 0, base + 1, base + 2] + list(range(base + 3, base + 11))]
    err = float(np.max(np.abs(M[np.ix_(idx, idx)] - np.eye(len(idx)))))
    return _residual_outcome(err, ctx.config.tol)


@check("e7-exponentials", "exp.alpha23_tilde.point", "alpha23~(pi/2) maps (E2 - E3, 0, 0, 0) to (i(E2 + E3), 0, 0, 0)",
       "alpha23~(pi/2) P3 = i E23.")
def _(ctx):
    X = np.zeros(27, dtype=complex)
    X[1], X[2] = 1, -1
    P = fr.FreudenthalVector.from_parts(X)
    return _residual_outcome(P.apply(groups.alpha23_tilde(np.pi / 2)).distance(orbits.s5_target()), ctx.config.tol)


@check("e7-exponentials", "exp.alpha.point", "alpha(-pi/4) maps (0, -iE1, 0, i) to E1~",
       "alpha(-pi/4) P2 = E1~")
def _(ctx):
    P = orbits.s6_target().apply(groups.alpha_diag(-np.pi / 4))
    return _residual_outcome(P.distance(orbits.s7_target()), ctx.config.tol)


# ---------------------------------------------------------------------------
# e7 spheres
# ---------------------------------------------------------------------------

_SPHERE = {"V6": "S5", "V7": "S6", "V8": "S7"}
_STRATUM_POINTS = {"V8": ("F1.",), "V7": ("F1.", "E1~"), "V6": ("F1.", "E1~", "E-1~")}


def _stratum_points(tag: str) -> list[fr.FreudenthalVector]:
    pts = [fr.F1_dot([1 if j == k else 0 for j in range(8)]) for k in range(4, 8)]
    if "E1~" in _STRATUM_POINTS[tag]:
        pts.append(fr.E1_tilde())
    if "E-1~" in _STRATUM_POINTS[tag]:
        pts.append(fr.E_minus1_tilde())
    return pts


@lru_cache(maxsize=None)
def _canonicalizations(tag: str, seed: int, n: int, tol: float) -> tuple:
    calibration.calibrate(tol)
    out = []
    for i in range(n):
        P = fr.sample_sphere(tag, (seed + i) % 2 ** 63)
        out.append(orbits.CANONICALIZERS[tag](P, tol))
    return tuple(out)


def _sphere_runs(ctx: Context, tag: str):
    # one shared sample per sphere, derived from the root seed
    return _canonicalizations(tag, check_seed(ctx.config.seed, f"sphere.{tag}"), ctx.config.sphere_samples,
                              ctx.config.tol)


def _sphere_checks(tag: str):
    s = _SPHERE[tag]

    @check("e7-spheres", f"sphere.{s}.residual", f"canonicalize random points of {s} to the canonical point",
           f"the stabilizer group acts transitively on {s}")
    def _(ctx):
        runs = _sphere_runs(ctx, tag)
        return _residual_outcome(max(c.residual for c in runs), 10 * ctx.config.tol, points=len(runs))

    @check("e7-spheres", f"sphere.{s}.word_length", f"words for {s} have at most {orbits.MAX_WORD[tag]} steps",
           "bounded word length")
    def _(ctx):
        m = max(len(c.word) for c in _sphere_runs(ctx, tag))
        return Outcome(m, orbits.MAX_WORD[tag], passed=m <= orbits.MAX_WORD[tag])

    @check("e7-spheres", f"sphere.{s}.mu_norm", f"mu-norm drift along every {s} word", "the action on V is orthogonal")
    def _(ctx):
        return _residual_outcome(max(orbits.mu_norm_drift(c) for c in _sphere_runs(ctx, tag)), ctx.config.tol)

    @check("e7-spheres", f"sphere.{s}.word_operators",
           f"every {s} word operator lies in E7, commutes with sigma and gamma and fixes the stratum points",
           "word operators lie in the stratum stabilizer")
    def _(ctx):
        S, G = fr.sigma_pc(False), fr.gamma_pc(False)
        pts = _stratum_points(tag)
        worst = {"e7": 0.0, "sigma": 0.0, "gamma": 0.0, "fixed_points": 0.0}
        count = 0
        for c in _sphere_runs(ctx, tag):
            for st in c.word:
                op = st.operator()
                count += 1
                worst["e7"] = max(worst["e7"], groups.e7_report(op, ctx.config.tol).residual)
                worst["sigma"] = max(worst["sigma"], _commutator_residual(op, S))
                worst["gamma"] = max(worst["gamma"], _commutator_residual(op, G))
                worst["fixed_points"] = max(worst["fixed_points"], *(p.apply(op).distance(p) for p in pts))
        return _residual_outcome(max(worst.values()), ctx.config.tol, operators=count, worst=worst)


for _tag in ("V6", "V7", "V8"):
    _sphere_checks(_tag)


@check("e7-spheres", "sphere.S5.canonical_preimage", "(E2 - E3, 0, 0, 0) needs only alpha23~(pi/2)",
       "alpha23~(pi/2) P3 = i E23.")
def _(ctx):
    calibration.calibrate(ctx.config.tol)
    P = fr.VSpacePoint("V6", 1.0, np.zeros(4), 0.0)  # E2 - E3
    c = orbits.canonicalize_s5(P, ctx.config.tol)
    return Outcome([c.word_dicts(), c.residual], [[{"generator": "alpha23~", "param": np.pi / 2}], 0.0],
                   10 * ctx.config.tol)


@check("e7-spheres", "sphere.S7.fixed_point", "E1~ canonicalizes with the empty word",
       "E1~ is the canonical point of S7")
def _(ctx):
    calibration.calibrate(ctx.config.tol)
    c = orbits.canonicalize_s7(fr.E1_tilde(), ctx.config.tol)
    return Outcome([c.word_dicts(), c.residual], [[], 0.0], 10 * ctx.config.tol)


@check("e7-spheres", "sphere.S7.from_S6_point", "(0, -iE1, 0, i) reaches E1~ by the single step alpha(-pi/4)",
       "alpha(-pi/4) P2 = E1~")
def _(ctx):
    calibration.calibrate(ctx.config.tol)
    c = orbits.canonicalize_s7(orbits.s6_target(), ctx.config.tol)
    return Outcome([c.word_dicts(), c.residual], [[{"generator": "alpha", "param": -np.pi / 4}], 0.0],
                   10 * ctx.config.tol)


# ---------------------------------------------------------------------------
# e7 theorem: su(2) map, kernel, stabilizer solves
# ---------------------------------------------------------------------------


def _exact_minus_identity2() -> groups.CMat:
    I = groups.exact_identity_c(2)
    return groups.CMat(-I.re, -I.im)


@check("e7-theorem", "theorem.phi_su2.minus_identity", "phi(-E) = -sigma on P^C exactly", "phi(-E) = -sigma")
def _(ctx):
    return Outcome(groups.phi_su2(_exact_minus_identity2()).equals(-fr.sigma_pc()), True)


@check("e7-theorem", "theorem.kernel", "the four kernel triples give the identity on P^C",
       "kernel {(E,1,1), (E,s,s)} x {(E,1,1), (-E,g,-sg)}")
def _(ctx):
    S, G = fr.sigma_pc(), fr.gamma_pc()
    I = LinearOperator.identity("PC")
    E, mE = groups.phi_su2(groups.exact_identity_c(2)), groups.phi_su2(_exact_minus_identity2())
    triples = {"(E,1,1)": (E, I, I), "(E,s,s)": (E, S, S), "(-E,g,-sg)": (mE, G, -(S @ G)),
               "(-E,sg,-g)": (mE, S @ G, -G)}
    res = {k: (a @ b @ c).residual(I) for k, (a, b, c) in triples.items()}
    return _residual_outcome(max(res.values()), EXACT_TOL, residuals=res)


@check("e7-theorem", "theorem.phi_su2.homomorphism", "phi(A B) = phi(A) phi(B) on random SU(2) samples",
       "phi is a homomorphism")
def _(ctx):
    r = groups.verify_homomorphism(groups.phi_su2, _random_su2, ctx.config.samples, EXACT_TOL,
                                   lambda a, b: a @ b, ctx.seed)
    return _residual_outcome(r.max_residual, EXACT_TOL, samples=r.samples)


@check("e7-theorem", "theorem.phi_su2.membership", "phi(A) lies in E7 and commutes with sigma and gamma",
       "phi(A) in (E7)^{sigma,gamma}")
def _(ctx):
    rng = ctx.rng
    S, G = fr.sigma_pc(False), fr.gamma_pc(False)
    worst = 0.0
    for _ in range(ctx.config.samples):
        op = groups.phi_su2(_random_su2(rng))
        worst = max(worst, groups.e7_report(op, ctx.config.tol).residual,
                    _commutator_residual(op, S), _commutator_residual(op, G))
    return _residual_outcome(worst, ctx.config.tol)


@check("e7-theorem", "theorem.stabilizer.commutant", "B commuting with every [[0, h], [conj h, 0]] is a real multiple of E",
       "B = +-E for the stabilizer of F1(h)")
def _(ctx):
    null = groups.commutant_of_offdiagonal()
    expected = [[1 if u in (0, 12) else 0 for u in range(16)]]
    return Outcome([[int(x) if x.denominator == 1 else str(x) for x in v] for v in null], expected)


@check("e7-theorem", "theorem.stabilizer.pairs", "p h = h q for all quaternions h forces p = q real",
       "p h conj(q) = h for all h gives (p, q) = +-(1, 1)")
def _(ctx):
    null = groups.fixing_pairs_he4()
    return Outcome([[int(x) if x.denominator == 1 else str(x) for x in v] for v in null],
                   [[1, 0, 0, 0, 1, 0, 0, 0]])


@check("e7-theorem", "theorem.stabilizer.sign", "phi4(p, q, -E) = phi4(-p, -q, E) exactly for rational units",
       "phi4(-1, -1, -E) = 1")
def _(ctx):
    rng = ctx.rng
    E2 = groups.quat_identity(2)
    bad = 0
    n = max(1, ctx.config.samples // 10)
    for _ in range(n):
        p, q = groups.rational_unit_quaternion(rng), groups.rational_unit_quaternion(rng)
        if not groups.phi4(p, q, -E2).equals(groups.phi4(_neg(p), _neg(q), E2)):
            bad += 1
    return Outcome(bad, 0, details={"samples": n})


@check("e7-theorem", "theorem.stabilizer.fixes", "phi4(p, q, E) fixes F1(h), and phi4(1, 1, B) fixes F1(h e4)",
       "the stabilizers of F1(h) and F1(h e4)")
def _(ctx):
    rng = ctx.rng
    worst = 0.0
    for _ in range(ctx.config.samples // 5 or 1):
        p, q = groups.random_unit_quaternion(rng), groups.random_unit_quaternion(rng)
        A = groups.phi4(p, q, groups.quat_identity(2, exact=False))
        B = groups.phi4([1.0, 0, 0, 0], [1.0, 0, 0, 0], groups.random_sp(2, rng))
        for k in range(4):
            h = np.zeros(27)
            h[3 + k] = 1
            worst = max(worst, float(np.max(np.abs(A.apply(h) - h))))
            h4 = np.zeros(27)
            h4[3 + 4 + k] = 1
            worst = max(worst, float(np.max(np.abs(B.apply(h4) - h4))))
    return _residual_outcome(worst, EXACT_TOL)


# ---------------------------------------------------------------------------
# tables: fixed dimensions against component sums
# ---------------------------------------------------------------------------


def _sp(n):
    return n * (2 * n + 1)


def _so(n):
    return n * (n - 1) // 2


def _su(n):
    return n * n - 1


def _u(n):
    return n * n


# (algebra, involutions) -> two decompositions into simple and abelian parts
TABLES = {
    ("f4", "sg"): {"sp(1)+sp(1)+sp(2)": [_sp(1), _sp(1), _sp(2)], "so(4)+so(5)": [_so(4), _so(5)]},
    ("e6", "sg"): {"sp(1)+s(u(2)+u(4))": [_sp(1), _u(2) + _u(4) - 1], "u(1)+so(4)+so(6)": [_u(1), _so(4), _so(6)]},
    ("e7", "sg"): {"su(2)+so(4)+so(8)": [_su(2), _so(4), _so(8)]},
    ("f4", "g"): {"sp(1)+sp(3)": [_sp(1), _sp(3)]},
    ("f4", "s"): {"so(9)": [_so(9)]},
    ("e6", "g"): {"sp(1)+su(6)": [_sp(1), _su(6)]},
    ("e6", "s"): {"u(1)+so(10)": [_u(1), _so(10)]},
    ("e7", "g"): {"su(2)+so(12)": [_su(2), _so(12)]},
    ("e7", "s"): {"su(2)+so(12)": [_su(2), _so(12)]},
}
_INV_NAME = {"s": "sigma", "g": "gamma", "sg": "sigma,gamma"}


def _table_check(alg: str, which: str):
    decomp = TABLES[(alg, which)]

    @check("tables", f"tables.{alg}.{which}", f"dim {alg}^{{{_INV_NAME[which]}}} against component sums",
           " = ".join(f"{k} ({sum(v)})" for k, v in decomp.items()))
    def _(ctx):
        B = fixed(alg, which)
        d = B.dim if ctx.exact_dims else span_dim(B.basis_ops(), False)
        sums = {k: sum(v) for k, v in decomp.items()}
        return Outcome({k: d for k in sums}, sums, 0.0, details={"components": decomp})


for (_alg, _which) in TABLES:
    _table_check(_alg, _which)


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------


def _run_one(spec: CheckSpec, config: Config) -> CheckResult:
    ctx = Context(config, check_seed(config.seed, spec.id))
    t0 = time.perf_counter()
    try:
        out = spec.fn(ctx)
        passed = within(out.measured, out.expected, out.tolerance) if out.passed is None else bool(out.passed)
        status, measured, expected, tol, details = ("pass" if passed else "fail"), out.measured, out.expected, \
            out.tolerance, out.details
    except Exception as exc:  # a crashing check is a failure with diagnostics
        status, measured, expected, tol = "fail", None, None, 0.0
        details = {"error": f"{type(exc).__name__}: {exc}", "traceback": traceback.format_exc(limit=5)}
    ms = (time.perf_counter() - t0) * 1000
    return CheckResult(spec.id, spec.description, spec.reference, status, measured, expected, tol, ms, details)


def backend_config(config: Config) -> dict:
    routes = {"exact": ("exact", "float"), "float": ("float", "float"), "auto": ("exact", "float")}[config.backend]
    return {"mode": config.backend, "dimensions": routes[0], "exponentials": routes[1],
            "samples": config.samples, "sphere_samples": config.sphere_samples, "tol": config.tol}


def run_suite(name: str, config: Config | None = None) -> SuiteReport:
    """Run every check of suite ``name`` (or ``all``) and collect a report."""
    config = config or Config()
    specs = suite_checks(name)
    cal = calibration.calibrate(config.tol)
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(lambda s: _run_one(s, config), specs))
    else:
        results = [_run_one(s, config) for s in specs]
    results.sort(key=lambda r: r.id)
    status = "pass" if all(r.status != "fail" for r in results) else "fail"
    return SuiteReport(name, config.seed, backend_config(config), cal.as_dict(), results, status)
