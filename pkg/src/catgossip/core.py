"""Uniform contract over the five geodesic spaces.

Every operation takes the space tag explicitly; points themselves are plain
values (arrays or :class:`~catgossip.spaces.tree.TreePoint`).  A distance is
always symmetric as computed, a geodesic is parameterized proportionally to
arc length on [0, 1], and the midpoint is the geodesic point at t = 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TagMismatch
from .spaces import euclidean, rotations, spd, sphere, tree

EUCLIDEAN = "euclidean"
SPD = "spd"
SPHERE = "sphere"
SO3 = "so3"
TREE = "tree"

SPACE_TAGS = (EUCLIDEAN, SPD, SPHERE, SO3, TREE)

# curvature upper bound under which each space is operated
DEFAULT_KAPPA = {EUCLIDEAN: 0.0, SPD: 0.0, TREE: 0.0, SPHERE: 1.0, SO3: 0.25}

# spaces embedded in a linear ambient (entrywise averaging stays inside)
LINEAR_SPACES = (EUCLIDEAN, SPD)

_OPS = {EUCLIDEAN: euclidean, SPD: spd, SPHERE: sphere, SO3: rotations, TREE: tree}


def space_ops(space: str):
    """Implementation module for a space tag."""
    try:
        return _OPS[space]
    except KeyError:
        raise TagMismatch(f"unknown space tag {space!r}") from None


@dataclass(frozen=True)
class CurvatureBound:
    """Curvature upper bound with the induced diameter and convexity radius."""

    kappa: float
    d_kappa: float  # model-space diameter, +inf for kappa <= 0
    r_kappa: float  # half of it; balls of smaller radius are convex


def curvature_bound(kappa: float) -> CurvatureBound:
    if kappa > 0.0:
        d = math.pi / math.sqrt(kappa)
    else:
        d = math.inf
    return CurvatureBound(kappa=kappa, d_kappa=d, r_kappa=d / 2.0)


def validate_point(space: str, p) -> None:
    """Raise if ``p`` does not satisfy the tagged space's type invariants."""
    space_ops(space).validate(p)


def distance(space: str, p, q) -> float:
    return space_ops(space).distance(p, q)


def distances_from(space: str, p, pts) -> np.ndarray:
    """Distances from ``p`` to a batch of points (stacked array, or a list
    for the tree)."""
    return space_ops(space).distances_from(p, pts)


def geodesic_point(space: str, p, q, t: float):
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"geodesic parameter {t!r} outside [0, 1]")
    return space_ops(space).geodesic(p, q, t)


def midpoint(space: str, p, q):
    return geodesic_point(space, p, q, 0.5)


def points_equal(space: str, p, q, tol: float | None = None) -> bool:
    ops = space_ops(space)
    if tol is None:
        return ops.points_equal(p, q)
    return ops.points_equal(p, q, tol)
