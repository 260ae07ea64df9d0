"""Matrix exponential by scaling and squaring with a truncated Taylor series."""

from __future__ import annotations

import math

import numpy as np

from .operator import LinearOperator


class ExpNonConvergence(RuntimeError):
    pass


def expm_array(A: np.ndarray, tol: float = 1e-12, max_order: int = 40) -> np.ndarray:
    """exp(A) for a real or complex square array.

    A is scaled by 2**-s until its 1-norm is at most 1/2, the series is summed
    until the next term drops below ``tol * eps``-level relative size, and the
    result is squared s times.
    """
    A = np.asarray(A)
    n = A.shape[0]
    norm = float(np.max(np.sum(np.abs(A), axis=0))) if n else 0.0
    s = 0
    if norm > 0.5:
        s = int(math.ceil(math.log2(norm / 0.5)))
    B = A / (2.0 ** s)
    term = np.eye(n, dtype=B.dtype)
    out = term.copy()
    stop = min(tol, 1e-16) * 1e-2
    for k in range(1, max_order + 1):
        term = term @ B / k
        out = out + term
        if np.max(np.abs(term)) <= stop * max(1.0, np.max(np.abs(out))):
            break
    else:
        raise ExpNonConvergence(
            f"series did not converge after {max_order} terms (norm {norm:.3g}, scaling 2^{s})")
    for _ in range(s):
        out = out @ out
    return out


def matrix_exp(T: LinearOperator, tol: float = 1e-12) -> LinearOperator:
    """exp of a float-backend operator; checks exp(T) exp(-T) = id within ``tol``."""
    if T.exact:
        raise TypeError("matrix_exp needs a float operator; call .to_float() first")
    E = expm_array(T.mat, tol)
    Einv = expm_array(-T.mat, tol)
    res = float(np.max(np.sum(np.abs(E @ Einv - np.eye(T.n)), axis=1)))
    scale = max(1.0, float(np.max(np.sum(np.abs(E), axis=1))) * float(np.max(np.sum(np.abs(Einv), axis=1))))
    if res > tol * scale:
        raise ExpNonConvergence(f"exp(T)exp(-T) deviates from identity by {res:.3g}")
    return LinearOperator(E, T.basis)
