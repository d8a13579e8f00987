"""Feedforward offset neutralizing net buoyancy in the body frame."""

import numpy as np

from .. import quaternions as quat


def buoyancy_offset(orientation, static_force, torque_arm=(0.0, 0.0, 0.0)):
    """Body-frame wrench canceling a net buoyant force of static_force newtons.

    The compensation is (0, 0, -static_force) in the world frame no matter how
    the vehicle is oriented; rotating the returned force back to world must
    recover it exactly. torque_arm is the body-frame offset of the center of
    buoyancy, contributing arm x force.
    """
    f_world = np.array([0.0, 0.0, -float(static_force)])
    f_body = quat.rotate_inverse(orientation, f_world)
    tau_body = np.cross(np.asarray(torque_arm, dtype=float), f_body)
    return np.concatenate([f_body, tau_body])
