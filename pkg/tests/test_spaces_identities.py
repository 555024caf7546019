"""Cross-space geodesic identities: symmetry, midpoint, additivity, triangle."""

import numpy as np
import pytest

from catgossip import core
from conftest import sample_points

SPACES = core.SPACE_TAGS
N_PAIRS = 500

MID_TOL = 1e-7
ADD_TOL = 1e-7
TRI_TOL = 1e-9


@pytest.mark.parametrize("space", SPACES)
def test_distance_symmetric_as_computed(space):
    rng = np.random.default_rng(1)
    pts = sample_points(space, 2000, rng)
    for p, q in zip(pts[::2], pts[1::2]):
        assert core.distance(space, p, q) == core.distance(space, q, p)


@pytest.mark.parametrize("space", SPACES)
def test_distance_zero_iff_equal(space):
    rng = np.random.default_rng(2)
    pts = sample_points(space, 50, rng)
    for p in pts:
        assert core.distance(space, p, p) == 0.0
    for p, q in zip(pts[::2], pts[1::2]):
        if not core.points_equal(space, p, q):
            assert core.distance(space, p, q) > 0.0


@pytest.mark.parametrize("space", SPACES)
def test_midpoint_identity(space):
    rng = np.random.default_rng(3)
    pts = sample_points(space, 2 * N_PAIRS, rng)
    for p, q in zip(pts[::2], pts[1::2]):
        d = core.distance(space, p, q)
        m = core.midpoint(space, p, q)
        core.validate_point(space, m)
        assert abs(core.distance(space, p, m) - d / 2) <= MID_TOL
        assert abs(core.distance(space, q, m) - d / 2) <= MID_TOL
        assert abs(core.distance(space, p, m) - core.distance(space, q, m)) <= MID_TOL


@pytest.mark.parametrize("space", SPACES)
def test_geodesic_endpoints(space):
    rng = np.random.default_rng(4)
    pts = sample_points(space, 60, rng)
    for p, q in zip(pts[::2], pts[1::2]):
        assert core.points_equal(space, core.geodesic_point(space, p, q, 0.0), p, tol=1e-9)
        assert core.points_equal(space, core.geodesic_point(space, p, q, 1.0), q, tol=1e-9)


@pytest.mark.parametrize("space", SPACES)
def test_geodesic_additivity(space):
    rng = np.random.default_rng(5)
    pts = sample_points(space, 200, rng)
    ts = np.random.default_rng(6).random((100, 2))
    for (p, q), (u, v) in zip(zip(pts[::2], pts[1::2]), ts):
        t1, t2 = sorted((float(u), float(v)))
        d = core.distance(space, p, q)
        g1 = core.geodesic_point(space, p, q, t1)
        g2 = core.geodesic_point(space, p, q, t2)
        assert abs(core.distance(space, g1, g2) - (t2 - t1) * d) <= ADD_TOL


@pytest.mark.parametrize("space", SPACES)
def test_triangle_inequality(space):
    rng = np.random.default_rng(7)
    pts = sample_points(space, 3 * N_PAIRS, rng)
    for p, q, r in zip(pts[::3], pts[1::3], pts[2::3]):
        slack = (
            core.distance(space, p, q)
            + core.distance(space, q, r)
            - core.distance(space, p, r)
        )
        assert slack >= -TRI_TOL


@pytest.mark.parametrize("space", SPACES)
def test_geodesic_parameter_domain(space):
    rng = np.random.default_rng(8)
    p, q = sample_points(space, 2, rng)
    from catgossip.errors import DomainError

    with pytest.raises(DomainError):
        core.geodesic_point(space, p, q, -0.1)
    with pytest.raises(DomainError):
        core.geodesic_point(space, p, q, 1.1)


@pytest.mark.parametrize("space", SPACES)
def test_snap_for_coincident_points(space):
    rng = np.random.default_rng(9)
    p, _ = sample_points(space, 2, rng)
    for t in (0.0, 0.3, 1.0):
        g = core.geodesic_point(space, p, p, t)
        assert core.distance(space, g, p) == 0.0
