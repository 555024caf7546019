"""Rotation group: exp/log round trips, bi-invariance, scipy oracles."""

import numpy as np
import pytest
import scipy.linalg as sla

from catgossip.errors import DomainError
from catgossip.spaces import rotations
from conftest import sample_points


def test_exp_zero_is_identity():
    assert np.array_equal(rotations.exp(np.zeros(3)), np.eye(3))


def test_exp_quarter_turn_about_z():
    r = rotations.exp(np.array([0.0, 0.0, np.pi / 2]))
    expected = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.abs(r - expected).max() <= 1e-12


def test_exp_trace_gives_angle(rng):
    # eigenvalues of a rotation by theta are {e^{i theta}, e^{-i theta}, 1}
    for _ in range(50):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        r = rotations.exp(0.7 * axis)
        assert np.trace(r) == pytest.approx(1.0 + 2.0 * np.cos(0.7), abs=1e-10)


def test_log_identity_is_zero():
    assert np.array_equal(rotations.log(np.eye(3)), np.zeros(3))


def test_log_rotation_about_z():
    r = rotations.rotation_about([0.0, 0.0, 1.0], 0.3)
    assert np.abs(rotations.log(r) - np.array([0.0, 0.0, 0.3])).max() <= 1e-12


def test_log_exp_roundtrip(rng):
    for _ in range(200):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        theta = float(rng.uniform(1e-8, np.pi - 1e-3))
        v = theta * axis
        assert np.abs(rotations.log(rotations.exp(v)) - v).max() <= 1e-9


def test_exp_matches_scipy_expm(rng):
    for _ in range(50):
        v = rng.standard_normal(3)
        v *= float(rng.uniform(0.0, 3.0)) / max(1e-12, np.linalg.norm(v))
        assert np.abs(rotations.exp(v) - sla.expm(rotations.hat(v))).max() <= 1e-12


def test_exp_roundtrip_exact_near_identity():
    v = np.array([1e-6, -2e-6, 0.5e-6])
    assert np.abs(rotations.log(rotations.exp(v)) - v).max() <= 1e-15


def test_exp_rejects_norm_at_pi():
    with pytest.raises(DomainError):
        rotations.exp(np.array([np.pi, 0.0, 0.0]))


def test_log_rejects_half_turn():
    half_turn = np.diag([1.0, -1.0, -1.0])  # rotation by pi about x
    with pytest.raises(DomainError):
        rotations.log(half_turn)
    with pytest.raises(DomainError):
        rotations.distance(np.eye(3), half_turn)


def test_distance_angle_example():
    r = rotations.rotation_about([0.0, 0.0, 1.0], 0.7)
    assert rotations.distance(np.eye(3), r) == pytest.approx(0.7, abs=1e-12)


def test_bi_invariance(rng):
    pts = sample_points("so3", 100, rng)
    qs = sample_points("so3", 50, rng)
    for (r1, r2), q in zip(zip(pts[::2], pts[1::2]), qs):
        d0 = rotations.distance(r1, r2)
        d1 = rotations.distance(rotations.renormalize(q @ r1), rotations.renormalize(q @ r2))
        assert abs(d1 - d0) <= 1e-9


def test_midpoint_halves_rotation_about_fixed_axis(rng):
    # geodesic from I to a rotation by theta passes the rotation by theta/2;
    # cross-checked against the matrix-exponential oracle
    for theta in (0.2, 0.9, 2.0):
        axis = rng.standard_normal(3)
        axis /= np.linalg.norm(axis)
        r = rotations.exp(theta * axis)
        mid = rotations.geodesic(np.eye(3), r, 0.5)
        assert np.abs(mid - rotations.exp(0.5 * theta * axis)).max() <= 1e-10
        oracle = sla.expm(0.5 * sla.logm(r).real).real
        assert np.abs(mid - oracle).max() <= 1e-9


def test_geodesic_stays_orthogonal(rng):
    pts = sample_points("so3", 100, rng)
    for r1, r2 in zip(pts[::2], pts[1::2]):
        g = rotations.geodesic(r1, r2, 0.73)
        rotations.validate(g)


def test_renormalize_fixes_drift(rng):
    r = sample_points("so3", 1, rng)[0]
    drifted = r + 1e-8 * rng.standard_normal((3, 3))
    fixed = rotations.renormalize(drifted)
    assert np.abs(fixed.T @ fixed - np.eye(3)).max() <= 1e-12
