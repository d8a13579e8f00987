"""Setpoints mixing position, velocity, and power control per axis, and the
world-to-body error computation feeding the PID bank."""

from dataclasses import dataclass, field

import numpy as np

from .. import quaternions as quat
from .pid import AXES

MODES = ("position", "velocity", "power")


class StaleStateError(RuntimeError):
    """State too old to act on; the controller holds its last safe output."""


@dataclass
class AxisTarget:
    mode: str
    target: float

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown control mode {self.mode!r}")
        if self.mode == "power" and not -1.0 <= self.target <= 1.0:
            raise ValueError("power targets must lie in [-1, 1]")


@dataclass
class Setpoint:
    axes: dict  # axis name -> AxisTarget

    def __post_init__(self):
        for name in self.axes:
            if name not in AXES:
                raise ValueError(f"unknown axis {name!r}")

    @classmethod
    def position(cls, x=None, y=None, z=None, roll=None, pitch=None, yaw=None):
        axes = {}
        for name, v in zip(AXES, (x, y, z, roll, pitch, yaw)):
            if v is not None:
                axes[name] = AxisTarget("position", float(v))
        return cls(axes)

    @classmethod
    def velocity(cls, **kw):
        return cls({k: AxisTarget("velocity", float(v)) for k, v in kw.items()})

    @classmethod
    def power(cls, **kw):
        return cls({k: AxisTarget("power", float(v)) for k, v in kw.items()})

    def merged(self, other):
        axes = dict(self.axes)
        axes.update(other.axes)
        return Setpoint(axes)

    def mode(self, axis):
        t = self.axes.get(axis)
        return t.mode if t else None


def compute_error(setpoint, state, now=None, staleness=0.5):
    """Per-axis control errors in body-local axes.

    Position-mode translation errors are world-frame deltas rotated into the
    body frame by the inverse orientation (the global-to-local transform that
    once bit us); angular errors are shortest-path differences in (-pi, pi].
    Velocity-mode errors compare against body rates; power mode passes
    through with zero error. Raises StaleStateError when the state is older
    than the staleness threshold.
    """
    if now is not None and now - state.stamp > staleness:
        raise StaleStateError(f"state is {now - state.stamp:.2f} s old")

    err = np.zeros(6)
    # translation: gather world-frame position error for position-mode axes
    world_err = np.zeros(3)
    for i, axis in enumerate(AXES[:3]):
        t = setpoint.axes.get(axis)
        if t is not None and t.mode == "position":
            world_err[i] = t.target - state.position[i]
    body_err = quat.rotate_inverse(state.orientation, world_err)

    rpy = quat.to_euler(state.orientation)
    for i, axis in enumerate(AXES):
        t = setpoint.axes.get(axis)
        if t is None:
            continue
        if t.mode == "position":
            if i < 3:
                err[i] = body_err[i]
            else:
                err[i] = quat.wrap_angle(t.target - rpy[i - 3])
        elif t.mode == "velocity":
            if i < 3:
                err[i] = t.target - state.linear_velocity[i]
            else:
                err[i] = t.target - state.angular_velocity[i - 3]
        # power mode: error stays zero, target passes through downstream
    return err
