"""Kinematic dead-reckoning fusion of IMU, DVL, and pressure.

Orientation comes straight from the converted IMU; xy position integrates
DVL body velocity rotated into ENU; z comes from pressure depth. Covariance
is a first-order growth model per axis, reset when the axis's sensor
delivers. Full EKF fusion is out of scope; this is deterministic and
testable, which is what the rest of the stack needs.
"""

from dataclasses import dataclass, field

import numpy as np

from .. import quaternions as quat
from .frames import FrameConfig, dvl_to_body, imu_rate_to_body, ned_to_enu, pressure_to_depth
from .state import VehicleState


@dataclass
class FusionConfig:
    frames: FrameConfig = field(default_factory=FrameConfig)
    surface_pressure: float = 101325.0
    water_density: float = 1000.0
    staleness_threshold: float = 0.5          # s
    base_variance: np.ndarray = field(
        default_factory=lambda: np.array([0.01, 0.01, 0.005, 0.002, 0.002, 0.002]))
    growth_rate: np.ndarray = field(
        default_factory=lambda: np.array([0.05, 0.05, 0.02, 0.01, 0.01, 0.01]))

    def __post_init__(self):
        self.base_variance = np.asarray(self.base_variance, dtype=float)
        self.growth_rate = np.asarray(self.growth_rate, dtype=float)


class DeadReckoningEstimator:
    def __init__(self, cfg: FusionConfig = None):
        self.cfg = cfg or FusionConfig()
        self._position = np.zeros(3)
        self._orientation = quat.IDENTITY.copy()
        self._velocity = np.zeros(3)
        self._angular = np.zeros(3)
        self._covariance = self.cfg.base_variance.copy()
        self._t = 0.0
        self._last_seen = {"imu": None, "dvl": None, "pressure": None}
        self._imu_ever = False
        self._above_surface = False

    def reset_position(self, position):
        """Anchor the dead-reckoned origin (e.g. at mission start)."""
        self._position = np.asarray(position, dtype=float).copy()

    @property
    def stale(self):
        """Topics whose last sample is older than the staleness threshold."""
        thr = self.cfg.staleness_threshold
        return {k for k, seen in self._last_seen.items()
                if seen is None or self._t - seen > thr}

    def fuse(self, imu=None, dvl=None, pressure=None, dt=0.0):
        """Advance the estimate by dt, folding in any samples that arrived.

        Requires at least one IMU sample before the first call with dt > 0;
        orientation is meaningless until then.
        """
        if imu is not None:
            self._orientation = ned_to_enu(imu.orientation_ned)
            self._angular = imu_rate_to_body(imu.angular_rate)
            self._imu_ever = True
            self._last_seen["imu"] = self._t
        if not self._imu_ever:
            raise RuntimeError("fuse called before any IMU sample")
        if dvl is not None:
            self._velocity = dvl_to_body(dvl.velocity, self._angular, self.cfg.frames)
            self._last_seen["dvl"] = self._t

        self._t += dt
        # dead-reckon xy with the held body velocity
        delta = quat.rotate(self._orientation, self._velocity) * dt
        self._position[0] += delta[0]
        self._position[1] += delta[1]

        if pressure is not None:
            depth, above = pressure_to_depth(
                pressure.pressure, self.cfg.surface_pressure, self.cfg.water_density)
            self._position[2] = -depth
            self._above_surface = above
            self._last_seen["pressure"] = self._t
        else:
            self._position[2] += delta[2]

        # covariance: reset on measurement arrival, hold while the sensor is
        # fresh, grow once its gap exceeds the staleness threshold
        cov = self._covariance
        grow = self.cfg.growth_rate * dt
        stale = self.stale
        if dvl is not None:
            cov[0:2] = self.cfg.base_variance[0:2]
        elif "dvl" in stale:
            cov[0:2] += grow[0:2]
        if pressure is not None:
            cov[2] = self.cfg.base_variance[2]
        elif "pressure" in stale:
            cov[2] += grow[2]
        if imu is not None:
            cov[3:6] = self.cfg.base_variance[3:6]
        elif "imu" in stale:
            cov[3:6] += grow[3:6]

        return VehicleState(
            position=self._position.copy(),
            orientation=self._orientation.copy(),
            linear_velocity=self._velocity.copy(),
            angular_velocity=self._angular.copy(),
            covariance=cov.copy(),
            stamp=self._t,
        )
