"""Unit 2-sphere with the great-circle metric.

Points are unit 3-vectors; d(a, b) = arccos(<a, b>), evaluated through the
chord length ``2 asin(|a - b| / 2)`` which stays accurate for nearly equal
points.  Antipodal and near-antipodal pairs are rejected: their connecting
geodesic is not unique.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, TagMismatch
from ..tolerances import INVARIANT_TOL, POINT_SNAP_TOL


def validate(p) -> None:
    if not isinstance(p, np.ndarray) or p.shape != (3,):
        raise TagMismatch(f"sphere point must be a 3-vector, got {type(p).__name__}")
    n = float(np.sqrt(np.dot(p, p)))
    if abs(n - 1.0) > INVARIANT_TOL:
        raise DomainError(f"sphere point norm {n!r} deviates from 1 beyond {INVARIANT_TOL:.0e}")


def _check_not_antipodal(p: np.ndarray, q: np.ndarray) -> float:
    dot = float(np.dot(p, q))
    if dot <= -1.0 + INVARIANT_TOL:
        raise DomainError("antipodal sphere points: geodesic is not unique")
    return dot


def distance(p: np.ndarray, q: np.ndarray) -> float:
    _check_not_antipodal(p, q)
    diff = p - q
    half_chord = 0.5 * float(np.sqrt(np.dot(diff, diff)))
    return 2.0 * float(np.arcsin(min(1.0, half_chord)))


def distances_from(p: np.ndarray, pts: np.ndarray) -> np.ndarray:
    diff = pts - p
    half = 0.5 * np.sqrt(np.einsum("ij,ij->i", diff, diff))
    dots = pts @ p
    if np.any(dots <= -1.0 + INVARIANT_TOL):
        raise DomainError("antipodal sphere points: geodesic is not unique")
    return 2.0 * np.arcsin(np.minimum(1.0, half))


def geodesic(p: np.ndarray, q: np.ndarray, t: float) -> np.ndarray:
    """Point at arc-length fraction ``t`` on the great circle from p to q."""
    dot = _check_not_antipodal(p, q)
    theta = distance(p, q)
    if theta < POINT_SNAP_TOL:
        return p.copy()
    # tangent direction at p toward q
    u = q - dot * p
    u = u / np.sqrt(np.dot(u, u))
    out = np.cos(t * theta) * p + np.sin(t * theta) * u
    return out / np.sqrt(np.dot(out, out))


def points_equal(p: np.ndarray, q: np.ndarray, tol: float = POINT_SNAP_TOL) -> bool:
    return distance(p, q) <= tol
