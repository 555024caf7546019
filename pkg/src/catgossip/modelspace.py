"""Constant-curvature model planes and comparison-geometry checkers.

The model surface at curvature kappa is the Euclidean plane (kappa = 0),
the sphere of radius 1/sqrt(kappa) (kappa > 0, stored as unit vectors with
scaled distances), or the hyperboloid sheet rescaled by 1/sqrt(-kappa)
(kappa < 0).  On top of the model spaces this module provides comparison
triangles and the quantitative checkers (midpoint-cosine, Bruhat-Tits,
triangle-thinness) used to certify that a concrete space behaves like a
CAT(kappa) space.  Checkers return a signed slack rather than a boolean so
tests and the CLI can report worst-case margins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .errors import DomainError, InfeasibleTriangle, TagMismatch
from .tolerances import GUARD_TOL, INVARIANT_TOL

_HYPERBOLOID_TOL = 1e-10


# ---------------------------------------------------------------------------
# trigonometric profile functions
# ---------------------------------------------------------------------------

def c_kappa(kappa: float, t):
    """cos(sqrt(kappa) t), continued as cosh for negative curvature."""
    _check_nonnegative(t)
    if kappa > 0.0:
        out = np.cos(math.sqrt(kappa) * np.asarray(t, dtype=float))
    elif kappa == 0.0:
        out = np.ones_like(np.asarray(t, dtype=float))
    else:
        out = np.cosh(math.sqrt(-kappa) * np.asarray(t, dtype=float))
    return out if np.ndim(t) else float(out)


def s_kappa(kappa: float, t):
    """sin(sqrt(kappa) t)/sqrt(kappa), with the flat and hyperbolic limits."""
    _check_nonnegative(t)
    arr = np.asarray(t, dtype=float)
    if kappa > 0.0:
        rk = math.sqrt(kappa)
        out = np.sin(rk * arr) / rk
    elif kappa == 0.0:
        out = arr.copy()
    else:
        rk = math.sqrt(-kappa)
        out = np.sinh(rk * arr) / rk
    return out if np.ndim(t) else float(out)


def chi_kappa(kappa: float, t):
    """1 - cos(sqrt(kappa) t), evaluated as 2 sin^2(sqrt(kappa) t / 2).

    Only defined for kappa > 0; the flat functionals use squared distances
    directly.
    """
    if kappa <= 0.0:
        raise DomainError(f"chi is only defined for positive curvature, got kappa={kappa!r}")
    _check_nonnegative(t)
    s = np.sin(0.5 * math.sqrt(kappa) * np.asarray(t, dtype=float))
    out = 2.0 * s * s
    return out if np.ndim(t) else float(out)


def _check_nonnegative(t) -> None:
    if np.any(np.asarray(t) < 0.0):
        raise DomainError("arc length must be nonnegative")


# ---------------------------------------------------------------------------
# model-plane points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModelPoint2:
    """Point of the curvature-kappa model plane.

    Coordinates are a 2-vector in the flat case, a unit 3-vector on the
    sphere, or a hyperboloid 3-vector (x0 > 0) otherwise.
    """

    kappa: float
    coords: np.ndarray

    def validate(self) -> None:
        c = self.coords
        if self.kappa == 0.0:
            if c.shape != (2,):
                raise TagMismatch("flat model point must be a 2-vector")
            return
        if c.shape != (3,):
            raise TagMismatch("curved model point must be a 3-vector")
        if self.kappa > 0.0:
            if abs(float(np.dot(c, c)) - 1.0) > 2 * INVARIANT_TOL:
                raise DomainError("spherical model point is not on the unit sphere")
        else:
            if abs(-c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + 1.0) > _HYPERBOLOID_TOL:
                raise DomainError("hyperbolic model point is not on the hyperboloid")
            if c[0] <= 0.0:
                raise DomainError("hyperbolic model point must have positive first coordinate")


def _check_same_kappa(p: ModelPoint2, q: ModelPoint2) -> float:
    if p.kappa != q.kappa:
        raise TagMismatch(f"model points at different curvatures: {p.kappa} vs {q.kappa}")
    return p.kappa


def _minkowski(u: np.ndarray, v: np.ndarray) -> float:
    return float(-u[0] * v[0] + u[1] * v[1] + u[2] * v[2])


def model_distance(p: ModelPoint2, q: ModelPoint2) -> float:
    kappa = _check_same_kappa(p, q)
    if kappa == 0.0:
        d = p.coords - q.coords
        return float(np.sqrt(np.dot(d, d)))
    if kappa > 0.0:
        diff = p.coords - q.coords
        half = 0.5 * float(np.sqrt(np.dot(diff, diff)))
        return 2.0 * float(np.arcsin(min(1.0, half))) / math.sqrt(kappa)
    m = -_minkowski(p.coords, q.coords)
    return float(np.arccosh(max(1.0, m))) / math.sqrt(-kappa)


def model_geodesic(p: ModelPoint2, q: ModelPoint2, t: float) -> ModelPoint2:
    """Arc-length-proportional geodesic point between two model points."""
    kappa = _check_same_kappa(p, q)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"geodesic parameter {t!r} outside [0, 1]")
    if kappa == 0.0:
        return ModelPoint2(kappa, (1.0 - t) * p.coords + t * q.coords)
    theta = model_distance(p, q) * math.sqrt(abs(kappa))
    if theta < 1e-15:
        return ModelPoint2(kappa, p.coords.copy())
    if kappa > 0.0:
        if theta >= math.pi - GUARD_TOL:
            raise DomainError("antipodal model points: geodesic is not unique")
        coords = (math.sin((1.0 - t) * theta) * p.coords + math.sin(t * theta) * q.coords) / math.sin(theta)
        coords = coords / float(np.sqrt(np.dot(coords, coords)))
        return ModelPoint2(kappa, coords)
    coords = (math.sinh((1.0 - t) * theta) * p.coords + math.sinh(t * theta) * q.coords) / math.sinh(theta)
    # re-project onto the hyperboloid sheet
    norm = math.sqrt(max(1e-300, -_minkowski(coords, coords)))
    return ModelPoint2(kappa, coords / norm)


def vertex_angle(at: ModelPoint2, b: ModelPoint2, c: ModelPoint2) -> float:
    """Angle at ``at`` between the geodesics toward ``b`` and ``c``."""
    kappa = _check_same_kappa(at, b)
    _check_same_kappa(at, c)
    if kappa == 0.0:
        u = b.coords - at.coords
        v = c.coords - at.coords
        nu = float(np.sqrt(np.dot(u, u)))
        nv = float(np.sqrt(np.dot(v, v)))
        if nu == 0.0 or nv == 0.0:
            return 0.0
        return float(np.arccos(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0)))
    if kappa > 0.0:
        u = b.coords - float(np.dot(at.coords, b.coords)) * at.coords
        v = c.coords - float(np.dot(at.coords, c.coords)) * at.coords
        nu = float(np.sqrt(np.dot(u, u)))
        nv = float(np.sqrt(np.dot(v, v)))
        if nu < 1e-15 or nv < 1e-15:
            return 0.0
        return float(np.arccos(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0)))
    u = b.coords + _minkowski(b.coords, at.coords) * at.coords
    v = c.coords + _minkowski(c.coords, at.coords) * at.coords
    nu = math.sqrt(max(0.0, _minkowski(u, u)))
    nv = math.sqrt(max(0.0, _minkowski(v, v)))
    if nu < 1e-15 or nv < 1e-15:
        return 0.0
    return float(np.arccos(np.clip(_minkowski(u, v) / (nu * nv), -1.0, 1.0)))


# ---------------------------------------------------------------------------
# comparison triangles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangleSides:
    """Side lengths (a, b, c) with a = d(B, C), b = d(A, C), c = d(A, B)."""

    a: float
    b: float
    c: float

    def validate(self, kappa: float) -> None:
        a, b, c = self.a, self.b, self.c
        if min(a, b, c) < 0.0:
            raise InfeasibleTriangle("negative side length")
        scale = max(1.0, a, b, c)
        slack = min(a + b - c, a + c - b, b + c - a)
        if slack < -INVARIANT_TOL * scale:
            raise InfeasibleTriangle(f"triangle inequality violated by {slack:.3e}")
        if kappa > 0.0:
            d_kappa = math.pi / math.sqrt(kappa)
            if max(a, b, c) > d_kappa + GUARD_TOL:
                raise InfeasibleTriangle("side exceeds the model-space diameter")
            if a + b + c >= 2.0 * d_kappa:
                raise InfeasibleTriangle("perimeter reaches twice the model-space diameter")


def comparison_triangle(kappa: float, sides: TriangleSides) -> tuple[ModelPoint2, ModelPoint2, ModelPoint2]:
    """Place a triangle with the given side lengths in the model plane.

    Placement is canonical: A sits at a fixed origin, B along a fixed
    direction, C in the upper half (positive last coordinate).
    """
    sides.validate(kappa)
    a, b, c = sides.a, sides.b, sides.c
    if kappa == 0.0:
        alpha = _flat_angle(a, b, c)
        pa = np.array([0.0, 0.0])
        pb = np.array([c, 0.0])
        pc = np.array([b * math.cos(alpha), b * math.sin(alpha)])
        return (ModelPoint2(0.0, pa), ModelPoint2(0.0, pb), ModelPoint2(0.0, pc))
    rk = math.sqrt(abs(kappa))
    ah, bh, ch = a * rk, b * rk, c * rk
    if kappa > 0.0:
        alpha = _spherical_angle(ah, bh, ch)
        pa = np.array([1.0, 0.0, 0.0])
        pb = np.array([math.cos(ch), math.sin(ch), 0.0])
        pc = np.array([math.cos(bh), math.sin(bh) * math.cos(alpha), math.sin(bh) * math.sin(alpha)])
    else:
        alpha = _hyperbolic_angle(ah, bh, ch)
        pa = np.array([1.0, 0.0, 0.0])
        pb = np.array([math.cosh(ch), math.sinh(ch), 0.0])
        pc = np.array([math.cosh(bh), math.sinh(bh) * math.cos(alpha), math.sinh(bh) * math.sin(alpha)])
    return (ModelPoint2(kappa, pa), ModelPoint2(kappa, pb), ModelPoint2(kappa, pc))


def _clamped_angle(cos_alpha: float, what: str) -> float:
    if abs(cos_alpha) > 1.0 + 1e-9:
        raise InfeasibleTriangle(f"{what}: placement angle has cosine {cos_alpha!r}")
    return math.acos(min(1.0, max(-1.0, cos_alpha)))


def _flat_angle(a: float, b: float, c: float) -> float:
    if b == 0.0 or c == 0.0:
        return 0.0
    return _clamped_angle((b * b + c * c - a * a) / (2.0 * b * c), "flat triangle")


def _spherical_angle(ah: float, bh: float, ch: float) -> float:
    denom = math.sin(bh) * math.sin(ch)
    if denom < 1e-300:
        return 0.0
    return _clamped_angle((math.cos(ah) - math.cos(bh) * math.cos(ch)) / denom, "spherical triangle")


def _hyperbolic_angle(ah: float, bh: float, ch: float) -> float:
    denom = math.sinh(bh) * math.sinh(ch)
    if denom < 1e-300:
        return 0.0
    return _clamped_angle((math.cosh(bh) * math.cosh(ch) - math.cosh(ah)) / denom, "hyperbolic triangle")


# ---------------------------------------------------------------------------
# inequality checkers (all return signed slack, >= 0 when satisfied)
# ---------------------------------------------------------------------------

def law_of_cosines_residual(kappa: float, p: ModelPoint2, q: ModelPoint2, r: ModelPoint2, alpha: float) -> float:
    """Left minus right of the curved law of cosines at vertex r.

    For kappa != 0 this is
    ``C(d(p,q)) - [C(d(p,r)) C(d(q,r)) + kappa S(d(p,r)) S(d(q,r)) cos(alpha)]``
    with C = c_kappa and S = s_kappa; the flat case uses the quadratic law
    ``d(p,q)^2 = d(p,r)^2 + d(q,r)^2 - 2 d(p,r) d(q,r) cos(alpha)``.
    """
    for point in (p, q, r):
        if point.kappa != kappa:
            raise TagMismatch("law-of-cosines points disagree with kappa")
    d_pq = model_distance(p, q)
    d_pr = model_distance(p, r)
    d_qr = model_distance(q, r)
    if kappa == 0.0:
        return d_pq**2 - (d_pr**2 + d_qr**2 - 2.0 * d_pr * d_qr * math.cos(alpha))
    lhs = c_kappa(kappa, d_pq)
    rhs = c_kappa(kappa, d_pr) * c_kappa(kappa, d_qr) + kappa * s_kappa(kappa, d_pr) * s_kappa(
        kappa, d_qr
    ) * math.cos(alpha)
    return lhs - rhs


def check_midpoint_cosine(space: str, kappa: float, p, q, r) -> float:
    """Slack of ``C(d(p,r)) + C(d(q,r)) <= 2 C(d(m,r)) C(d(p,q)/2)``.

    m is the geodesic midpoint of p and q; all pairwise distances must stay
    below the convexity radius of the curvature bound.
    """
    if kappa <= 0.0:
        raise DomainError("midpoint-cosine check requires positive curvature")
    r_kappa = core.curvature_bound(kappa).r_kappa
    d_pq = core.distance(space, p, q)
    d_pr = core.distance(space, p, r)
    d_qr = core.distance(space, q, r)
    if max(d_pq, d_pr, d_qr) >= r_kappa:
        raise DomainError("triangle exceeds the convexity radius for this curvature")
    m = core.midpoint(space, p, q)
    d_mr = core.distance(space, m, r)
    lhs = c_kappa(kappa, d_pr) + c_kappa(kappa, d_qr)
    rhs = 2.0 * c_kappa(kappa, d_mr) * c_kappa(kappa, 0.5 * d_pq)
    return rhs - lhs


def check_bruhat_tits(space: str, p, q, r) -> float:
    """Slack of ``2 d(p,m)^2 <= d(p,q)^2 + d(p,r)^2 - d(q,r)^2 / 2`` with m
    the midpoint of q and r; nonnegative in any CAT(0) space."""
    m = core.midpoint(space, q, r)
    d_pm = core.distance(space, p, m)
    d_pq = core.distance(space, p, q)
    d_pr = core.distance(space, p, r)
    d_qr = core.distance(space, q, r)
    return d_pq**2 + d_pr**2 - 0.5 * d_qr**2 - 2.0 * d_pm**2


def check_cat_inequality(space: str, kappa: float, p, q, r, samples: int) -> float:
    """Minimum comparison slack over a grid of geodesic parameter pairs.

    For parameters (t, t') the actual distance d(gamma_pq(t), gamma_pr(t'))
    is compared with the distance between the matching points of the
    comparison triangle in the model plane; the returned value is the
    minimum of (comparison - actual) and is >= 0 in a CAT(kappa) space.
    """
    d_pq = core.distance(space, p, q)
    d_pr = core.distance(space, p, r)
    d_qr = core.distance(space, q, r)
    tri = TriangleSides(a=d_qr, b=d_pr, c=d_pq)
    ca, cb, cc = comparison_triangle(kappa, tri)
    grid = max(1, int(round(math.sqrt(samples))))
    ts = [(i + 1.0) / (grid + 1.0) for i in range(grid)]
    worst = math.inf
    for t in ts:
        x = core.geodesic_point(space, p, q, t)
        mx = model_geodesic(ca, cb, t)
        for tp in ts:
            y = core.geodesic_point(space, p, r, tp)
            my = model_geodesic(ca, cc, tp)
            slack = model_distance(mx, my) - core.distance(space, x, y)
            if slack < worst:
                worst = slack
    return worst
