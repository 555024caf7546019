"""Symmetric positive-definite 3x3 matrices with the affine-invariant metric.

d(M, N) is the Frobenius norm of log(N^{-1/2} M N^{-1/2}); the geodesic is
M^{1/2} (M^{-1/2} N M^{-1/2})^t M^{1/2}.  Every result is symmetrized, and
the two arguments of the distance are put in a canonical order first so that
d(M, N) and d(N, M) are computed bit-identically.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, NumericalError, TagMismatch
from ..sym3 import eigvals_batch, spd_power, spd_sqrt_invsqrt, sym_part
from ..tolerances import INVARIANT_TOL, POINT_SNAP_TOL, SPD_EIG_FLOOR


def validate(m) -> None:
    if not isinstance(m, np.ndarray) or m.shape != (3, 3):
        raise TagMismatch(f"SPD point must be a 3x3 array, got {type(m).__name__}")
    scale = max(1.0, float(np.sqrt((m * m).sum())))
    asym = m - m.T
    if float(np.sqrt((asym * asym).sum())) > INVARIANT_TOL * scale:
        raise DomainError("matrix is not symmetric within tolerance")
    w = eigvals_batch(sym_part(m))
    if float(w[0]) <= SPD_EIG_FLOOR:
        raise DomainError(f"matrix is not positive definite (min eigenvalue {w[0]:.3e})")


def _close(m: np.ndarray, n: np.ndarray) -> bool:
    d = m - n
    scale = max(1.0, float(np.sqrt((m * m).sum())))
    return float(np.sqrt((d * d).sum())) < POINT_SNAP_TOL * scale


def distance(m: np.ndarray, n: np.ndarray) -> float:
    if m.shape != n.shape:
        raise TagMismatch("SPD shapes differ")
    if np.array_equal(m, n):
        return 0.0
    # canonical argument order: the metric is symmetric, this makes the
    # floating-point result symmetric as well
    a, b = (m, n) if _lex_le(m, n) else (n, m)
    _, binv = spd_sqrt_invsqrt(b)
    c = sym_part(binv @ a @ binv)
    lam = eigvals_batch(c)
    if float(lam[0]) <= SPD_EIG_FLOOR:
        raise NumericalError("congruence lost positive definiteness")
    logs = np.log(lam)
    return float(np.sqrt(np.dot(logs, logs)))


def _lex_le(m: np.ndarray, n: np.ndarray) -> bool:
    for a, b in zip(m.ravel(), n.ravel()):
        if a != b:
            return a < b
    return True


def distances_from(m: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Distances from one SPD matrix to a stack of them, shape (k, 3, 3)."""
    equal = np.all(pts == m, axis=(1, 2))
    _, minv = spd_sqrt_invsqrt(m)
    c = sym_part(minv @ pts @ minv)
    lam = eigvals_batch(c)
    if float(lam.min()) <= SPD_EIG_FLOOR:
        raise NumericalError("congruence lost positive definiteness")
    out = np.sqrt((np.log(lam) ** 2).sum(axis=1))
    out[equal] = 0.0
    return out


def geodesic(m: np.ndarray, n: np.ndarray, t: float) -> np.ndarray:
    """M^{1/2} (M^{-1/2} N M^{-1/2})^t M^{1/2}, symmetrized."""
    if m.shape != n.shape:
        raise TagMismatch("SPD shapes differ")
    if np.array_equal(m, n) or _close(m, n):
        return m.copy()
    root, invroot = spd_sqrt_invsqrt(m)
    inner = sym_part(invroot @ n @ invroot)
    return sym_part(root @ spd_power(inner, t) @ root)


def points_equal(m: np.ndarray, n: np.ndarray, tol: float = POINT_SNAP_TOL) -> bool:
    d = m - n
    scale = max(1.0, float(np.sqrt((m * m).sum())))
    return float(np.sqrt((d * d).sum())) <= tol * scale


def frobenius_distances_from(m: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Plain Frobenius distances, used by the flat-metric comparison curves."""
    d = pts - m
    return np.sqrt((d * d).sum(axis=(1, 2)))
