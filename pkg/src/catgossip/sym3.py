"""Symmetric 3x3 eigen-kernels.

Matrix functions (square root, inverse square root, fractional powers) go
through a hand-rolled cyclic Jacobi eigendecomposition: at this size a few
sweeps reach machine precision, the rotation order is fixed, so results are
deterministic for identical inputs.  Eigenvalue-only batch queries (the hot
path of the pairwise-distance updates) use ``np.linalg.eigvalsh``, which is
LAPACK-backed and an order of magnitude faster per matrix; the two kernels
are cross-checked in the test suite.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericalError
from .tolerances import SPD_EIG_FLOOR

_JACOBI_SWEEPS = 24
_PIVOTS = ((0, 1), (0, 2), (1, 2))


def jacobi_eigh3(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    mat : ndarray, shape (3, 3)
        Symmetric matrix (only the upper triangle is read).

    Returns
    -------
    w : ndarray, shape (3,)
        Eigenvalues in ascending order.
    v : ndarray, shape (3, 3)
        Orthonormal eigenvectors as columns, ``v @ diag(w) @ v.T == mat``.
    """
    a = [[float(mat[0, 0]), float(mat[0, 1]), float(mat[0, 2])],
         [float(mat[0, 1]), float(mat[1, 1]), float(mat[1, 2])],
         [float(mat[0, 2]), float(mat[1, 2]), float(mat[2, 2])]]
    v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    scale = abs(a[0][0]) + abs(a[1][1]) + abs(a[2][2]) + 1e-300
    for _ in range(_JACOBI_SWEEPS):
        off = abs(a[0][1]) + abs(a[0][2]) + abs(a[1][2])
        if off <= 1e-16 * scale:
            break
        for p, q in _PIVOTS:
            apq = a[p][q]
            if apq == 0.0:
                continue
            tau = (a[q][q] - a[p][p]) / (2.0 * apq)
            if tau >= 0.0:
                t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
            for k in range(3):
                akp, akq = a[k][p], a[k][q]
                a[k][p] = c * akp - s * akq
                a[k][q] = s * akp + c * akq
            for k in range(3):
                apk, aqk = a[p][k], a[q][k]
                a[p][k] = c * apk - s * aqk
                a[q][k] = s * apk + c * aqk
            # symmetrize the pivot pair to stop drift across sweeps
            a[p][q] = a[q][p] = 0.5 * (a[p][q] + a[q][p])
            for k in range(3):
                vkp, vkq = v[k][p], v[k][q]
                v[k][p] = c * vkp - s * vkq
                v[k][q] = s * vkp + c * vkq
    w = np.array([a[0][0], a[1][1], a[2][2]])
    vecs = np.array(v)
    order = np.argsort(w, kind="stable")
    return w[order], vecs[:, order]


def sym_part(mat: np.ndarray) -> np.ndarray:
    """Symmetric part, also valid on a batch of matrices."""
    return 0.5 * (mat + np.swapaxes(mat, -1, -2))


def _checked_eigvals(w: np.ndarray, what: str) -> np.ndarray:
    if np.min(w) <= SPD_EIG_FLOOR:
        raise NumericalError(
            f"{what}: eigenvalue {np.min(w):.3e} at or below floor {SPD_EIG_FLOOR:.0e}"
        )
    return w


def spd_sqrt_invsqrt(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Matrix square root and inverse square root of an SPD 3x3 matrix."""
    w, v = jacobi_eigh3(mat)
    _checked_eigvals(w, "spd_sqrt_invsqrt")
    r = np.sqrt(w)
    return sym_part((v * r) @ v.T), sym_part((v / r) @ v.T)


def spd_power(mat: np.ndarray, exponent: float) -> np.ndarray:
    """Fractional power of an SPD 3x3 matrix."""
    w, v = jacobi_eigh3(mat)
    _checked_eigvals(w, "spd_power")
    return sym_part((v * w**exponent) @ v.T)


def eigvals_batch(mats: np.ndarray) -> np.ndarray:
    """Eigenvalues of a batch of symmetric matrices, shape (..., 3, 3) -> (..., 3)."""
    return np.linalg.eigvalsh(mats)
