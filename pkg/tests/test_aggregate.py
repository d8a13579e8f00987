import numpy as np
import pytest

from auvstack.acoustics import (PingerObservation, aggregate_pinger,
                                octant_center_bearing)


def obs(position, world_bearing, octant=0):
    # choose yaw so that yaw + octant center equals the desired bearing
    yaw = world_bearing - octant_center_bearing(octant)
    return PingerObservation(np.asarray(position, float), yaw, octant)


def closed_form_two_rays(o1, d1, o2, d2):
    """Oracle: exact intersection of two lines (origin, direction)."""
    A = np.array([[d1[0], -d2[0]], [d1[1], -d2[1]]])
    t = np.linalg.solve(A, np.asarray(o2) - np.asarray(o1))
    return np.asarray(o1) + t[0] * np.asarray(d1)


def test_two_perpendicular_rays_exact():
    a = obs([0.0, 5.0], 0.0)
    b = obs([10.0, 0.0], np.pi / 2)
    est = aggregate_pinger([a, b])
    oracle = closed_form_two_rays([0, 5], [1, 0], [10, 0], [0, 1])
    assert np.allclose(oracle, [10.0, 5.0])
    assert np.allclose(est.position, [10.0, 5.0], atol=1e-6)
    assert est.residual < 1e-6


def test_oblique_rays_match_closed_form():
    rng = np.random.default_rng(0)
    for _ in range(50):
        o1, o2 = rng.uniform(0, 20, 2), rng.uniform(0, 20, 2)
        b1 = rng.uniform(0, 2 * np.pi)
        b2 = b1 + rng.uniform(np.deg2rad(20), np.deg2rad(160))
        est = aggregate_pinger([obs(o1, b1), obs(o2, b2)])
        oracle = closed_form_two_rays(o1, [np.cos(b1), np.sin(b1)],
                                      o2, [np.cos(b2), np.sin(b2)])
        assert np.allclose(est.position, oracle, atol=1e-5)


def test_same_point_observations_direction_only():
    a = obs([3.0, 3.0], 0.3)
    b = obs([3.0, 3.0], 1.0)
    est = aggregate_pinger([a, b])
    assert est.direction_only
    assert est.position is None
    assert est.direction is not None


def test_parallel_rays_direction_only():
    a = obs([0.0, 0.0], 0.5)
    b = obs([5.0, 1.0], 0.5 + np.deg2rad(0.5))
    est = aggregate_pinger([a, b])
    assert est.direction_only
    assert est.direction == pytest.approx(0.5, abs=np.deg2rad(1.0))


def test_requires_two_observations():
    with pytest.raises(ValueError):
        aggregate_pinger([obs([0, 0], 0.0)])


def test_noisy_octant_ring_within_2_m():
    # 20 octant-quantized observations around a known pinger
    rng = np.random.default_rng(7)
    pinger = np.array([12.0, 7.0])
    observations = []
    for i in range(20):
        angle = 2 * np.pi * i / 20
        pos = pinger + (6.0 + rng.uniform(-1, 1)) * np.array(
            [np.cos(angle), np.sin(angle)])
        yaw = rng.uniform(0, 2 * np.pi)
        true_bearing = np.arctan2(*(pinger - pos)[::-1])
        rel = (true_bearing - yaw) % (2 * np.pi)
        octant = int(rel // (np.pi / 4)) % 8
        observations.append(PingerObservation(pos, yaw, octant))
    est = aggregate_pinger(observations)
    assert not est.direction_only
    assert np.linalg.norm(est.position - pinger) < 2.0
    assert est.observation_count == 20
