import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from auvstack import quaternions as quat


def scipy_quat(q):
    # scipy uses (x, y, z, w)
    return Rotation.from_quat([q[1], q[2], q[3], q[0]])


def test_multiply_matches_scipy():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = quat.random_unit(rng)
        b = quat.random_unit(rng)
        ours = quat.multiply(a, b)
        ref = scipy_quat(a) * scipy_quat(b)
        x, y, z, w = ref.as_quat()
        ref_q = np.array([w, x, y, z])
        assert min(np.linalg.norm(ours - ref_q), np.linalg.norm(ours + ref_q)) < 1e-12


def test_rotate_matches_matrix():
    rng = np.random.default_rng(2)
    for _ in range(200):
        q = quat.random_unit(rng)
        v = rng.normal(size=3)
        assert np.allclose(quat.rotate(q, v), quat.to_matrix(q) @ v, atol=1e-12)
        assert np.allclose(quat.rotate_inverse(q, quat.rotate(q, v)), v, atol=1e-12)


def test_matrix_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(200):
        q = quat.canonical(quat.random_unit(rng))
        assert np.allclose(quat.from_matrix(quat.to_matrix(q)), q, atol=1e-9)


def test_euler_round_trip():
    rng = np.random.default_rng(4)
    for _ in range(200):
        rpy = rng.uniform([-np.pi, -np.pi / 2 + 0.01, -np.pi], [np.pi, np.pi / 2 - 0.01, np.pi])
        q = quat.from_euler(*rpy)
        assert np.allclose(quat.to_euler(q), rpy, atol=1e-9)
        ref = Rotation.from_euler("ZYX", rpy[::-1]).as_matrix()
        assert np.allclose(quat.to_matrix(q), ref, atol=1e-12)


def test_integrate_constant_rate():
    # constant yaw rate for 1 s should yaw by ~1 rad
    q = quat.IDENTITY.copy()
    for _ in range(1000):
        q = quat.integrate(q, np.array([0.0, 0.0, 1.0]), 1e-3)
    assert abs(quat.to_euler(q)[2] - 1.0) < 1e-3
    assert abs(np.linalg.norm(q) - 1.0) < 1e-12


def test_wrap_angle():
    assert quat.wrap_angle(np.pi) == pytest.approx(np.pi)
    assert quat.wrap_angle(-np.pi) == pytest.approx(np.pi)
    assert quat.wrap_angle(3 * np.pi / 2) == pytest.approx(-np.pi / 2)
    assert quat.wrap_angle(np.deg2rad(179) - np.deg2rad(-179)) == pytest.approx(np.deg2rad(-2))


def test_normalize_rejects_bad_input():
    with pytest.raises(ValueError):
        quat.normalize([0.0, 0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        quat.normalize([np.nan, 0.0, 0.0, 1.0])
