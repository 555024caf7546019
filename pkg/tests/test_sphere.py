"""Unit sphere: arc distances, great-circle geodesics, antipodal rejection."""

import numpy as np
import pytest

from catgossip.errors import DomainError
from catgossip.spaces import sphere

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])


def test_distance_orthogonal_units():
    assert sphere.distance(E1, E2) == pytest.approx(np.pi / 2, abs=1e-12)


def test_distance_equals_arccos_of_dot(rng):
    for _ in range(200):
        p, q = (v / np.linalg.norm(v) for v in rng.standard_normal((2, 3)))
        if float(p @ q) < -0.99:
            continue
        assert sphere.distance(p, q) == pytest.approx(np.arccos(np.clip(p @ q, -1, 1)), abs=1e-12)


def test_midpoint_of_orthogonal_units():
    mid = sphere.geodesic(E1, E2, 0.5)
    assert np.abs(mid - np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)).max() <= 1e-12


def test_geodesic_stays_unit(rng):
    for _ in range(100):
        p, q = (v / np.linalg.norm(v) for v in np.abs(rng.standard_normal((2, 3))))
        g = sphere.geodesic(p, q, float(rng.random()))
        sphere.validate(g)


def test_antipodal_rejected():
    with pytest.raises(DomainError):
        sphere.distance(E1, -E1)
    with pytest.raises(DomainError):
        sphere.geodesic(E1, -E1, 0.5)


def test_near_equal_points_accurate():
    p = E1
    q = np.array([np.cos(1e-9), np.sin(1e-9), 0.0])
    assert sphere.distance(p, q) == pytest.approx(1e-9, rel=1e-6)


def test_validate_rejects_nonunit():
    with pytest.raises(DomainError):
        sphere.validate(np.array([1.0, 1.0, 0.0]))
