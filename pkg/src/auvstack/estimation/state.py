"""The single state record flowing through estimation, controls, and mission."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class VehicleState:
    position: np.ndarray           # m, ENU world
    orientation: np.ndarray        # unit quaternion, body -> ENU
    linear_velocity: np.ndarray    # m/s, body frame
    angular_velocity: np.ndarray   # rad/s, body frame
    covariance: np.ndarray         # diagonal: x, y, z, roll, pitch, yaw
    stamp: float                   # s

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        self.orientation = np.asarray(self.orientation, dtype=float)
        self.linear_velocity = np.asarray(self.linear_velocity, dtype=float)
        self.angular_velocity = np.asarray(self.angular_velocity, dtype=float)
        self.covariance = np.asarray(self.covariance, dtype=float)
        if abs(np.linalg.norm(self.orientation) - 1.0) > 1e-6:
            raise ValueError("orientation must be unit-norm")
        if np.any(self.covariance < 0):
            raise ValueError("covariance entries must be nonnegative")

    def copy(self):
        return VehicleState(
            self.position.copy(), self.orientation.copy(),
            self.linear_velocity.copy(), self.angular_velocity.copy(),
            self.covariance.copy(), self.stamp)
