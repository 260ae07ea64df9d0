"""Real forms of C-linear maps, for either backend.

A C-linear map R + iI on C^n becomes the real matrix [[R, -I], [I, R]] in the
layout (real parts, imaginary parts).  On P^C the four summands each use that
layout in turn, see :func:`pc_blocks`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg.ratmat import RatMat, block

N = 27


def is_exact(M) -> bool:
    return isinstance(M, RatMat)


def zeros(shape, exact: bool):
    return RatMat.zeros(shape) if exact else np.zeros(shape)


def eye(n: int, exact: bool):
    return RatMat.identity(n) if exact else np.eye(n)


def assemble(rows: Sequence[Sequence], exact: bool):
    return block(rows) if exact else np.block([[np.asarray(m, dtype=float) for m in r] for r in rows])


def scale(M, s):
    """Multiply by a real scalar, exactly when possible."""
    if is_exact(M):
        return M.scale(s)
    return M * float(s)


def cform(R, I):
    """Real form [[R, -I], [I, R]]."""
    exact = is_exact(R)
    return assemble([[R, -I], [I, R]], exact)


def c_parts(M):
    """Inverse of :func:`cform` (no check that M really is C-linear)."""
    n = M.shape[0] // 2
    return M[:n, :n], M[n:, :n]


def complex_scalar_block(z, n: int, exact: bool):
    """Real form of z * identity_n for a complex scalar z = (re, im)."""
    re, im = z
    I = eye(n, exact)
    return cform(scale(I, re), scale(I, im))


def column_block(v, exact: bool):
    """Real form (54 x 2) of the C-linear map C -> J^C, s -> s v, for v = (re27, im27)."""
    re, im = split_vec(v)
    if exact:
        R = RatMat.from_fractions(np.array(re, dtype=object)[:, None])
        Im = RatMat.from_fractions(np.array(im, dtype=object)[:, None])
    else:
        R = np.asarray(re, dtype=float)[:, None]
        Im = np.asarray(im, dtype=float)[:, None]
    return cform(R, Im)


def row_block(v, metric, exact: bool):
    """Real form (2 x 54) of the C-linear functional Y -> (v, Y) with (.,.) = sum g_a v_a Y_a."""
    re, im = split_vec(v)
    g = np.asarray(metric)
    if exact:
        R = RatMat.from_fractions(np.array([Fraction(x) * int(w) for x, w in zip(re, g)], dtype=object)[None, :])
        Im = RatMat.from_fractions(np.array([Fraction(x) * int(w) for x, w in zip(im, g)], dtype=object)[None, :])
    else:
        R = (np.asarray(re, dtype=float) * g)[None, :]
        Im = (np.asarray(im, dtype=float) * g)[None, :]
    return cform(R, Im)


def split_vec(v):
    v = list(v) if not isinstance(v, np.ndarray) else v
    return v[:N], v[N:]


def pc_real_index(k: int) -> tuple[int, int]:
    """Real (re, im) positions of complex coordinate k of P^C (X 0..26, Y 27..53, xi 54, eta 55)."""
    if k < 27:
        return k, 27 + k
    if k < 54:
        return 54 + (k - 27), 81 + (k - 27)
    if k == 54:
        return 108, 109
    if k == 55:
        return 110, 111
    raise IndexError(k)


def complex_to_pc_real(M: np.ndarray) -> np.ndarray:
    """Real 112x112 form of a complex 56x56 matrix in the P^C layout."""
    re_idx = np.array([pc_real_index(k)[0] for k in range(56)])
    im_idx = np.array([pc_real_index(k)[1] for k in range(56)])
    out = np.zeros((112, 112))
    out[np.ix_(re_idx, re_idx)] = M.real
    out[np.ix_(re_idx, im_idx)] = -M.imag
    out[np.ix_(im_idx, re_idx)] = M.imag
    out[np.ix_(im_idx, im_idx)] = M.real
    return out


def pc_real_to_complex(M: np.ndarray) -> np.ndarray:
    re_idx = np.array([pc_real_index(k)[0] for k in range(56)])
    im_idx = np.array([pc_real_index(k)[1] for k in range(56)])
    return M[np.ix_(re_idx, re_idx)] + 1j * M[np.ix_(im_idx, re_idx)]


def jc_real_to_complex(M: np.ndarray) -> np.ndarray:
    return M[:N, :N] + 1j * M[N:, :N]


def complex_to_jc_real(M: np.ndarray) -> np.ndarray:
    return np.block([[M.real, -M.imag], [M.imag, M.real]])


def pc_vec_to_complex(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return np.array([v[pc_real_index(k)[0]] + 1j * v[pc_real_index(k)[1]] for k in range(56)])


def complex_to_pc_vec(z: np.ndarray) -> np.ndarray:
    out = np.zeros(112)
    for k in range(56):
        r, i = pc_real_index(k)
        out[r] = z[k].real
        out[i] = z[k].imag
    return out
