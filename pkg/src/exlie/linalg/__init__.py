"""Exact and float linear algebra used by every algebra construction."""

from .exact import SparseEchelon, bareiss_rank_det, inertia, nullspace, rank, rref
from .expm import ExpNonConvergence, expm_array, matrix_exp
from .modular import PRIMES, modular_rank
from .operator import BASIS_DIMS, BasisMismatch, LinearOperator
from .ratmat import RatMat
from .span import ExactSpan, NotAnInvolution, NotInSpan, eigenspace_involution, exact_rank, in_span, span_equal

__all__ = [
    "BASIS_DIMS", "BasisMismatch", "ExactSpan", "ExpNonConvergence", "LinearOperator", "NotAnInvolution",
    "NotInSpan", "PRIMES", "RatMat", "SparseEchelon", "bareiss_rank_det", "eigenspace_involution",
    "exact_rank", "expm_array", "in_span", "inertia", "matrix_exp", "modular_rank", "nullspace", "rank",
    "rref", "span_equal",
]
