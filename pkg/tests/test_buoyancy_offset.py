import numpy as np
import pytest

from auvstack import quaternions as quat
from auvstack.control.buoyancy import buoyancy_offset


def test_identity_orientation():
    off = buoyancy_offset(quat.IDENTITY, 5.0)
    assert np.allclose(off, [0.0, 0.0, -5.0, 0.0, 0.0, 0.0], atol=1e-12)


def test_180_roll_flips_sign():
    q = quat.from_euler(np.pi, 0.0, 0.0)
    off = buoyancy_offset(q, 5.0)
    assert np.allclose(off[:3], [0.0, 0.0, 5.0], atol=1e-12)


def test_world_frame_invariance_1000_orientations():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        q = quat.random_unit(rng)
        off = buoyancy_offset(q, 5.0)
        back = quat.rotate(q, off[:3])
        assert np.allclose(back, [0.0, 0.0, -5.0], atol=1e-9)


def test_torque_arm_cross_product():
    off = buoyancy_offset(quat.IDENTITY, 4.0, torque_arm=(0.1, 0.0, 0.0))
    # arm x force = (0.1,0,0) x (0,0,-4) = (0, 0.4, 0)
    assert np.allclose(off[3:], [0.0, 0.4, 0.0], atol=1e-12)
