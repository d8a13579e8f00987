"""Six-axis PID with Butterworth-filtered derivatives and integral clamping."""

from dataclasses import dataclass, field

import numpy as np

from .biquad import Biquad

AXES = ("x", "y", "z", "roll", "pitch", "yaw")


@dataclass
class PidGains:
    kp: float = 0.0
    ki: float = 0.0
    kd: float = 0.0
    integral_clamp: float = 1.0     # bound on the integral term, effort units
    derivative_cutoff: float = 10.0  # Hz

    def validate(self, sample_rate):
        if self.integral_clamp < 0:
            raise ValueError("integral_clamp must be nonnegative")
        if not 0.0 < self.derivative_cutoff < sample_rate / 2.0:
            raise ValueError("derivative_cutoff outside (0, Nyquist)")
        for g in (self.kp, self.ki, self.kd):
            if not np.isfinite(g):
                raise ValueError("gains must be finite")


class PidAxisState:
    """Mutable per-axis memory: integral, filtered-error history, biquad state."""

    def __init__(self, gains, sample_rate):
        self.filter = Biquad.lowpass(gains.derivative_cutoff, sample_rate)
        self.integral = 0.0
        self.previous_filtered_error = 0.0
        self.primed = False
        self.fault = False

    def reset(self):
        self.filter.reset()
        self.integral = 0.0
        self.previous_filtered_error = 0.0
        self.primed = False
        self.fault = False


def pid_step(gains, axis_state, error, dt):
    """One PID update: kp*e + ki*clamped-integral + kd*d(filtered e)/dt.

    The integral term (not the raw integral) is clamped to the gains'
    integral_clamp. The derivative is the finite difference of the
    Butterworth-filtered error; the filter state is primed on the first
    sample after a reset so a step setpoint does not kick the derivative.
    A non-finite error resets the axis and raises its fault flag.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if not np.isfinite(error):
        axis_state.reset()
        axis_state.fault = True
        return 0.0

    if not axis_state.primed:
        axis_state.filter.prime(error)
        axis_state.previous_filtered_error = error
        axis_state.primed = True

    axis_state.integral += error * dt
    if gains.ki > 0.0:
        bound = gains.integral_clamp / gains.ki
        axis_state.integral = min(max(axis_state.integral, -bound), bound)
    integral_term = gains.ki * axis_state.integral

    filtered = axis_state.filter.step(error)
    derivative = (filtered - axis_state.previous_filtered_error) / dt
    axis_state.previous_filtered_error = filtered

    return gains.kp * error + integral_term + gains.kd * derivative


class PidBank:
    """The six per-axis loops plus live-tunable gains."""

    def __init__(self, gains_by_axis, sample_rate):
        self.sample_rate = sample_rate
        self.gains = {}
        self.state = {}
        for axis in AXES:
            g = gains_by_axis.get(axis, PidGains())
            g.validate(sample_rate)
            self.gains[axis] = g
            self.state[axis] = PidAxisState(g, sample_rate)

    def step_axis(self, axis, error, dt):
        return pid_step(self.gains[axis], self.state[axis], error, dt)

    def step_all(self, errors, dt):
        return np.array([self.step_axis(a, e, dt)
                         for a, e in zip(AXES, errors)])

    def update_gains(self, axis, new_gains):
        """Swap gains without touching integral or filter memory, except that
        a changed derivative cutoff rebuilds the filter (primed, no kick)."""
        new_gains.validate(self.sample_rate)
        old = self.gains[axis]
        self.gains[axis] = new_gains
        if new_gains.derivative_cutoff != old.derivative_cutoff:
            st = self.state[axis]
            fresh = Biquad.lowpass(new_gains.derivative_cutoff, self.sample_rate)
            fresh.prime(st.previous_filtered_error)
            st.filter = fresh

    def reset(self):
        for st in self.state.values():
            st.reset()
