"""Rotation group SO(3) with the bi-invariant metric.

With the inner product <v1, v2> = tr(v1^T v2) / 2 on skew matrices the
distance between rotations is the principal relative angle:
d(R1, R2) = |alpha| where {e^{i alpha}, e^{-i alpha}, 1} are the eigenvalues
of R1^T R2.  The exponential map is evaluated in Rodrigues closed form, the
logarithm from the trace angle plus skew extraction, with series branches
near the identity.  Pairs at relative angle pi have no principal logarithm
and are rejected.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, TagMismatch
from ..sym3 import jacobi_eigh3
from ..tolerances import GUARD_TOL, POINT_SNAP_TOL, ROTATION_TOL

_SMALL_ANGLE = 1e-4


def hat(v: np.ndarray) -> np.ndarray:
    """Skew-symmetric matrix of a 3-vector."""
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def vee(m: np.ndarray) -> np.ndarray:
    """Inverse of :func:`hat` on a skew-symmetric matrix."""
    return np.array([m[2, 1], m[0, 2], m[1, 0]])


def validate(r) -> None:
    if not isinstance(r, np.ndarray) or r.shape != (3, 3):
        raise TagMismatch(f"rotation must be a 3x3 array, got {type(r).__name__}")
    defect = r.T @ r - np.eye(3)
    if float(np.sqrt((defect * defect).sum())) > ROTATION_TOL:
        raise DomainError("matrix is not orthogonal within tolerance")
    if float(np.linalg.det(r)) <= 0.0:
        raise DomainError("matrix has non-positive determinant")


def exp(v: np.ndarray) -> np.ndarray:
    """Rotation with axis v/|v| and angle |v| (Rodrigues form). Requires |v| < pi."""
    theta2 = float(np.dot(v, v))
    theta = math.sqrt(theta2)
    if theta >= math.pi:
        raise DomainError(f"rotation vector norm {theta!r} is outside [0, pi)")
    if theta < _SMALL_ANGLE:
        a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0
        b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0
    else:
        a = math.sin(theta) / theta
        b = (1.0 - math.cos(theta)) / theta2
    k = hat(v)
    return np.eye(3) + a * k + b * (k @ k)


def _principal_angle(r: np.ndarray) -> float:
    """Rotation angle in [0, pi], via atan2 of the skew norm and the trace."""
    c = 0.5 * (float(r[0, 0] + r[1, 1] + r[2, 2]) - 1.0)
    w = vee(0.5 * (r - r.T))
    s = float(np.sqrt(np.dot(w, w)))  # |sin(theta)| for a true rotation
    return math.atan2(s, c)


def log(r: np.ndarray) -> np.ndarray:
    """Principal logarithm as a rotation vector (axis times angle in [0, pi))."""
    theta = _principal_angle(r)
    if theta >= math.pi - GUARD_TOL:
        raise DomainError("rotation angle at pi: principal logarithm undefined")
    w = vee(0.5 * (r - r.T))  # sin(theta) * axis
    if theta < _SMALL_ANGLE:
        theta2 = theta * theta
        factor = 1.0 + theta2 / 6.0 + 7.0 * theta2 * theta2 / 360.0
    else:
        factor = theta / math.sin(theta)
    return factor * w


def renormalize(r: np.ndarray) -> np.ndarray:
    """Project onto SO(3) by a polar step when orthogonality has drifted."""
    defect = r.T @ r - np.eye(3)
    if float(np.sqrt((defect * defect).sum())) <= 1e-12:
        return r
    w, v = jacobi_eigh3(r.T @ r)
    return r @ ((v / np.sqrt(w)) @ v.T)


def distance(p: np.ndarray, q: np.ndarray) -> float:
    if p.shape != q.shape:
        raise TagMismatch("rotation shapes differ")
    # tr(p^T q) as an elementwise sum keeps d(p, q) bitwise symmetric
    c = 0.5 * (float((p * q).sum()) - 1.0)
    s = float(np.sqrt((vee(0.5 * (p.T @ q - q.T @ p)) ** 2).sum()))
    theta = math.atan2(s, c)
    if theta >= math.pi - GUARD_TOL:
        raise DomainError("near-antipodal rotations: geodesic is not unique")
    return theta


def distances_from(p: np.ndarray, pts: np.ndarray) -> np.ndarray:
    equal = np.all(pts == p, axis=(1, 2))
    c = 0.5 * (np.einsum("ij,bij->b", p, pts) - 1.0)
    rel = np.einsum("ji,bjk->bik", p, pts)
    skew = 0.5 * (rel - np.swapaxes(rel, 1, 2))
    s = np.sqrt(skew[:, 2, 1] ** 2 + skew[:, 0, 2] ** 2 + skew[:, 1, 0] ** 2)
    theta = np.arctan2(s, c)
    if np.any(theta >= math.pi - GUARD_TOL):
        raise DomainError("near-antipodal rotations: geodesic is not unique")
    theta[equal] = 0.0
    return theta


def geodesic(p: np.ndarray, q: np.ndarray, t: float) -> np.ndarray:
    """gamma(t) = p exp(t log(p^T q)), the unique minimizing geodesic."""
    if distance(p, q) < POINT_SNAP_TOL:
        return p.copy()
    out = p @ exp(t * log(p.T @ q))
    return renormalize(out)


def points_equal(p: np.ndarray, q: np.ndarray, tol: float = POINT_SNAP_TOL) -> bool:
    return distance(p, q) <= tol


def rotation_about(axis: np.ndarray, angle: float) -> np.ndarray:
    """Convenience constructor; axis is normalized internally."""
    axis = np.asarray(axis, dtype=float)
    n = float(np.sqrt(np.dot(axis, axis)))
    if n == 0.0:
        raise DomainError("zero rotation axis")
    return exp((angle / n) * axis)
