"""Flat vector space: points are 1-D float arrays of a common dimension."""

from __future__ import annotations

import numpy as np

from ..errors import TagMismatch
from ..tolerances import POINT_SNAP_TOL


def validate(p) -> None:
    if not isinstance(p, np.ndarray) or p.ndim != 1:
        raise TagMismatch(f"euclidean point must be a 1-D array, got {type(p).__name__}")
    if not np.all(np.isfinite(p)):
        raise TagMismatch("euclidean point has non-finite entries")


def _check_pair(p, q) -> None:
    if getattr(p, "ndim", None) != 1 or p.shape != q.shape:
        raise TagMismatch(f"expected equal-length vectors, got {p!r} vs {q!r}")


def distance(p: np.ndarray, q: np.ndarray) -> float:
    _check_pair(p, q)
    d = p - q
    return float(np.sqrt(np.dot(d, d)))


def distances_from(p: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Distances from ``p`` to every row of ``pts``."""
    d = pts - p
    return np.sqrt(np.einsum("ij,ij->i", d, d))


def geodesic(p: np.ndarray, q: np.ndarray, t: float) -> np.ndarray:
    _check_pair(p, q)
    if distance(p, q) < POINT_SNAP_TOL:
        return p.copy()
    return (1.0 - t) * p + t * q


def points_equal(p: np.ndarray, q: np.ndarray, tol: float = POINT_SNAP_TOL) -> bool:
    return distance(p, q) <= tol
