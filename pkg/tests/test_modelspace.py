"""Model planes, comparison triangles, and the inequality checkers."""

import math

import numpy as np
import pytest

from catgossip import core, modelspace as ms
from catgossip.errors import DomainError, InfeasibleTriangle, TagMismatch
from conftest import sample_points

KAPPAS = (-1.0, 0.0, 0.25, 1.0, 4.0)


# ---------------------------------------------------------------------------
# profile functions
# ---------------------------------------------------------------------------

def test_chi_examples():
    assert ms.chi_kappa(1.0, 0.0) == 0.0
    assert ms.chi_kappa(1.0, math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert ms.chi_kappa(0.25, math.pi) == pytest.approx(1.0, abs=1e-15)


def test_chi_range_and_monotonicity():
    x = np.linspace(0.0, math.pi, 500)
    chi = ms.chi_kappa(1.0, x)
    assert np.all(chi >= 0.0) and np.all(chi <= 2.0)
    half = x[x <= math.pi / 2]
    assert np.all(np.diff(ms.chi_kappa(1.0, half)) > 0.0)


def test_chi_rejects_flat_and_negative_kappa():
    with pytest.raises(DomainError):
        ms.chi_kappa(0.0, 1.0)
    with pytest.raises(DomainError):
        ms.chi_kappa(-1.0, 1.0)
    with pytest.raises(DomainError):
        ms.chi_kappa(1.0, -0.5)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_c_s_pythagorean_identity(kappa):
    for t in np.linspace(0.0, 2.5, 100):
        c = ms.c_kappa(kappa, t)
        s = ms.s_kappa(kappa, t)
        assert abs(c * c + kappa * s * s - 1.0) <= 1e-12


def test_chi_quadratic_envelope():
    for kappa in (0.25, 1.0, 4.0):
        x = np.linspace(0.0, math.pi / (2 * math.sqrt(kappa)), 10_000, endpoint=False)
        chi = ms.chi_kappa(kappa, x)
        assert np.all(chi >= (2 * kappa / math.pi**2) * x * x)
        assert np.all(chi <= (kappa / 2) * x * x)


# ---------------------------------------------------------------------------
# model points and distances
# ---------------------------------------------------------------------------

def test_model_distance_examples():
    e1 = ms.ModelPoint2(1.0, np.array([1.0, 0.0, 0.0]))
    e2 = ms.ModelPoint2(1.0, np.array([0.0, 1.0, 0.0]))
    assert ms.model_distance(e1, e2) == pytest.approx(math.pi / 2, abs=1e-12)

    h0 = ms.ModelPoint2(-1.0, np.array([1.0, 0.0, 0.0]))
    h1 = ms.ModelPoint2(-1.0, np.array([math.cosh(1.0), math.sinh(1.0), 0.0]))
    assert ms.model_distance(h0, h1) == pytest.approx(1.0, abs=1e-12)

    # diameter scaling: antipodal pair at kappa=4 sits at pi/2
    p = ms.ModelPoint2(4.0, np.array([0.0, 0.0, 1.0]))
    q = ms.ModelPoint2(4.0, np.array([0.0, 0.0, -1.0]))
    assert ms.model_distance(p, q) == pytest.approx(math.pi / 2, abs=1e-12)


def test_model_distance_kappa_mismatch():
    p = ms.ModelPoint2(1.0, np.array([1.0, 0.0, 0.0]))
    q = ms.ModelPoint2(4.0, np.array([1.0, 0.0, 0.0]))
    with pytest.raises(TagMismatch):
        ms.model_distance(p, q)


def test_model_point_validation():
    ms.ModelPoint2(0.0, np.zeros(2)).validate()
    ms.ModelPoint2(1.0, np.array([0.0, 0.0, 1.0])).validate()
    ms.ModelPoint2(-1.0, np.array([1.0, 0.0, 0.0])).validate()
    with pytest.raises(DomainError):
        ms.ModelPoint2(1.0, np.array([0.0, 0.0, 2.0])).validate()
    with pytest.raises(DomainError):
        ms.ModelPoint2(-1.0, np.array([-1.0, 0.0, 0.0])).validate()


def _random_model_point(kappa, rng):
    if kappa == 0.0:
        return ms.ModelPoint2(0.0, rng.standard_normal(2))
    if kappa > 0.0:
        v = rng.standard_normal(3)
        return ms.ModelPoint2(kappa, v / np.linalg.norm(v))
    xy = 0.8 * rng.standard_normal(2)
    x0 = math.sqrt(1.0 + float(xy @ xy))
    return ms.ModelPoint2(kappa, np.array([x0, xy[0], xy[1]]))


@pytest.mark.parametrize("kappa", KAPPAS)
def test_model_geodesic_identities(kappa):
    rng = np.random.default_rng(11)
    for _ in range(50):
        p = _random_model_point(kappa, rng)
        q = _random_model_point(kappa, rng)
        d = ms.model_distance(p, q)
        if kappa > 0.0 and d * math.sqrt(kappa) > math.pi - 1e-6:
            continue
        m = ms.model_geodesic(p, q, 0.5)
        m.validate()
        assert ms.model_distance(p, m) == pytest.approx(d / 2, abs=1e-9)
        assert ms.model_distance(m, q) == pytest.approx(d / 2, abs=1e-9)


# ---------------------------------------------------------------------------
# comparison triangles
# ---------------------------------------------------------------------------

def test_comparison_triangle_flat_3_4_5():
    a, b, c = ms.comparison_triangle(0.0, ms.TriangleSides(3.0, 4.0, 5.0))
    assert np.array_equal(a.coords, [0.0, 0.0])
    assert np.array_equal(b.coords, [5.0, 0.0])
    assert ms.model_distance(b, c) == pytest.approx(3.0, abs=1e-12)
    assert ms.model_distance(a, c) == pytest.approx(4.0, abs=1e-12)


def test_comparison_triangle_octant():
    s = math.pi / 2
    a, b, c = ms.comparison_triangle(1.0, ms.TriangleSides(s, s, s))
    for u, v in ((a, b), (b, c), (a, c)):
        assert ms.model_distance(u, v) == pytest.approx(s, abs=1e-12)
    # mutually orthogonal unit vectors
    assert abs(float(a.coords @ b.coords)) <= 1e-12
    assert abs(float(a.coords @ c.coords)) <= 1e-12
    assert abs(float(b.coords @ c.coords)) <= 1e-12


def test_comparison_triangle_spherical_sides():
    sides = ms.TriangleSides(0.3, 0.4, 0.6)
    a, b, c = ms.comparison_triangle(1.0, sides)
    assert ms.model_distance(b, c) == pytest.approx(0.3, abs=1e-9)
    assert ms.model_distance(a, c) == pytest.approx(0.4, abs=1e-9)
    assert ms.model_distance(a, b) == pytest.approx(0.6, abs=1e-9)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_comparison_triangle_roundtrip_random(kappa):
    rng = np.random.default_rng(17)
    done = 0
    while done < 200:
        pts = [_random_model_point(kappa, rng) for _ in range(3)]
        a = ms.model_distance(pts[1], pts[2])
        b = ms.model_distance(pts[0], pts[2])
        c = ms.model_distance(pts[0], pts[1])
        try:
            ca, cb, cc = ms.comparison_triangle(kappa, ms.TriangleSides(a, b, c))
        except InfeasibleTriangle:
            continue
        assert ms.model_distance(cb, cc) == pytest.approx(a, abs=1e-9)
        assert ms.model_distance(ca, cc) == pytest.approx(b, abs=1e-9)
        assert ms.model_distance(ca, cb) == pytest.approx(c, abs=1e-9)
        done += 1


def test_comparison_triangle_infeasible():
    with pytest.raises(InfeasibleTriangle):
        ms.comparison_triangle(0.0, ms.TriangleSides(10.0, 1.0, 1.0))
    with pytest.raises(InfeasibleTriangle):
        ms.comparison_triangle(1.0, ms.TriangleSides(2.5, 2.5, 2.0))  # perimeter > 2 pi
    with pytest.raises(InfeasibleTriangle):
        ms.comparison_triangle(4.0, ms.TriangleSides(2.0, 1.0, 1.5))  # side > pi/2


# ---------------------------------------------------------------------------
# law of cosines
# ---------------------------------------------------------------------------

def test_law_of_cosines_degenerate():
    p = _random_model_point(1.0, np.random.default_rng(3))
    q = _random_model_point(1.0, np.random.default_rng(4))
    assert ms.law_of_cosines_residual(1.0, p, q, q, 0.3) == pytest.approx(0.0, abs=1e-12)


def test_law_of_cosines_octant():
    e1 = ms.ModelPoint2(1.0, np.array([1.0, 0.0, 0.0]))
    e2 = ms.ModelPoint2(1.0, np.array([0.0, 1.0, 0.0]))
    e3 = ms.ModelPoint2(1.0, np.array([0.0, 0.0, 1.0]))
    assert ms.law_of_cosines_residual(1.0, e1, e2, e3, math.pi / 2) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("kappa", (-1.0, 0.25, 1.0, 4.0))
def test_law_of_cosines_embedded_triangles(kappa):
    rng = np.random.default_rng(23)
    done = 0
    r_kappa = math.pi / (2 * math.sqrt(kappa)) if kappa > 0 else math.inf
    while done < 100:
        p = _random_model_point(kappa, rng)
        q = _random_model_point(kappa, rng)
        r = _random_model_point(kappa, rng)
        if max(ms.model_distance(p, r), ms.model_distance(q, r), ms.model_distance(p, q)) >= r_kappa:
            continue
        alpha = ms.vertex_angle(r, p, q)
        assert abs(ms.law_of_cosines_residual(kappa, p, q, r, alpha)) <= 1e-9
        done += 1


# ---------------------------------------------------------------------------
# checkers on the concrete spaces
# ---------------------------------------------------------------------------

def test_midpoint_cosine_trivial_pair(rng):
    p, r = sample_points(core.SPHERE, 2, rng)
    assert abs(ms.check_midpoint_cosine(core.SPHERE, 1.0, p, p, r)) <= 1e-12


def test_midpoint_cosine_sphere_and_so3(rng):
    for space, kappa in ((core.SPHERE, 1.0), (core.SO3, 0.25)):
        pts = sample_points(space, 300, rng)
        worst = min(
            ms.check_midpoint_cosine(space, kappa, p, q, r)
            for p, q, r in zip(pts[::3], pts[1::3], pts[2::3])
        )
        assert worst >= -1e-9


def test_midpoint_cosine_rejects_large_triangles():
    e1 = np.array([1.0, 0.0, 0.0])
    e2 = np.array([0.0, 1.0, 0.0])
    with pytest.raises(DomainError):
        ms.check_midpoint_cosine(core.SPHERE, 1.0, e1, e2, np.array([0.0, 0.0, 1.0]))


def test_bruhat_tits_euclidean_equality(rng):
    for _ in range(200):
        p, q, r = rng.standard_normal((3, 4))
        assert abs(ms.check_bruhat_tits(core.EUCLIDEAN, p, q, r)) <= 1e-10


def test_bruhat_tits_spd_and_tree(rng):
    for space in (core.SPD, core.TREE):
        pts = sample_points(space, 300, rng)
        worst = min(
            ms.check_bruhat_tits(space, p, q, r)
            for p, q, r in zip(pts[::3], pts[1::3], pts[2::3])
        )
        assert worst >= -(1e-12 if space == core.TREE else 1e-9)


def test_cat_inequality_flat_is_tight(rng):
    pts = sample_points(core.EUCLIDEAN, 60, rng)
    for p, q, r in zip(pts[::3], pts[1::3], pts[2::3]):
        assert abs(ms.check_cat_inequality(core.EUCLIDEAN, 0.0, p, q, r, 25)) <= 1e-10


def test_cat_inequality_spd_nonnegative(rng):
    pts = sample_points(core.SPD, 90, rng)
    for p, q, r in zip(pts[::3], pts[1::3], pts[2::3]):
        assert ms.check_cat_inequality(core.SPD, 0.0, p, q, r, 25) >= -1e-8


def test_cat_inequality_sphere_is_model(rng):
    pts = sample_points(core.SPHERE, 60, rng)
    for p, q, r in zip(pts[::3], pts[1::3], pts[2::3]):
        assert abs(ms.check_cat_inequality(core.SPHERE, 1.0, p, q, r, 25)) <= 1e-8
