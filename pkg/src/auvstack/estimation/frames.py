"""Sensor frame conversions into the right-handed ENU world the stack expects.

Two frame bugs cost us dearly on the bench: the IMU publishes NED while
everything downstream assumes ENU, and the DVL is left-handed. Both
corrections live here, next to their inverses' documentation, so the
conventions can never drift apart silently.
"""

from dataclasses import dataclass, field

import numpy as np

from .. import quaternions as quat

# world axis relabel NED<->ENU: 180 deg about (1,1,0)/sqrt(2)
_Q_WORLD = np.array([0.0, np.sqrt(0.5), np.sqrt(0.5), 0.0])
# body axis relabel forward-right-down <-> forward-left-up: 180 deg about x
_Q_BODY = np.array([0.0, 1.0, 0.0, 0.0])


@dataclass
class FrameConfig:
    dvl_mount_offset: np.ndarray = field(default_factory=lambda: np.zeros(3))
    dvl_axis_flip: str = "y"       # which instrument axis is mirrored
    imu_source_frame: str = "ned"

    def __post_init__(self):
        self.dvl_mount_offset = np.asarray(self.dvl_mount_offset, dtype=float)
        if not np.all(np.isfinite(self.dvl_mount_offset)):
            raise ValueError("mount offset must be finite")
        if self.dvl_axis_flip not in ("x", "y", "z"):
            raise ValueError("dvl_axis_flip must be one of x, y, z")


def ned_to_enu(q_ned):
    """Re-express a body->NED orientation as body->ENU.

    World axes map NED(x,y,z) -> ENU(y,x,-z) and the body frame flips from
    forward-right-down to forward-left-up. Applying the same sandwich twice
    returns the original rotation (both relabels are involutions).
    """
    q_ned = np.asarray(q_ned, dtype=float)
    if abs(np.linalg.norm(q_ned) - 1.0) > 1e-6:
        raise ValueError("ned_to_enu requires a unit quaternion")
    return quat.canonical(quat.multiply(_Q_WORLD, quat.multiply(q_ned, _Q_BODY)))


def dvl_to_body(v_dvl, omega, cfg: FrameConfig):
    """Recover center-of-body velocity from a left-handed DVL reading.

    Undo the handedness flip, then remove the w x r contribution of the
    mount offset.
    """
    v = np.asarray(v_dvl, dtype=float).copy()
    v["xyz".index(cfg.dvl_axis_flip)] *= -1.0
    return v - np.cross(omega, cfg.dvl_mount_offset)


def imu_rate_to_body(rate_frd):
    """Gyro rates from the IMU's forward-right-down axes to body (flu)."""
    r = np.asarray(rate_frd, dtype=float)
    return np.array([r[0], -r[1], -r[2]])


def pressure_to_depth(pressure, surface_pressure, density, gravity=9.81):
    """Hydrostatic depth in meters; clamped at zero above the surface.

    Returns (depth, above_surface) where the flag marks readings below the
    surface pressure.
    """
    if density <= 0 or gravity <= 0:
        raise ValueError("density and gravity must be positive")
    depth = (pressure - surface_pressure) / (density * gravity)
    if depth < 0.0:
        return 0.0, True
    return depth, False
