"""Thruster geometry, ESC hardware-defect model, and PWM-to-thrust curve.

The ESCs on the bench exhibited a constant pulse-width offset and a coarse
internal quantization: the pulse the motor driver acts on is not the pulse
sent. ``apply_pwm`` reproduces that defect so the controls stack can be
tested against it, and so the firmware-side correction (adding the offset
before sending, see control.pwm) can be verified end to end.
"""

from dataclasses import dataclass, field

import numpy as np

PWM_MIN = 1100.0
PWM_MAX = 1900.0
PWM_NEUTRAL = 1500.0
DEADBAND_LOW = 1475.0
DEADBAND_HIGH = 1525.0


@dataclass
class EscDefectProfile:
    """Per-ESC pulse-width offset (us) and quantization step (us)."""

    offset_us: np.ndarray
    quantization_us: np.ndarray

    def __post_init__(self):
        self.offset_us = np.atleast_1d(np.asarray(self.offset_us, dtype=float))
        self.quantization_us = np.atleast_1d(np.asarray(self.quantization_us, dtype=float))
        if np.any(self.quantization_us <= 0):
            raise ValueError("quantization_us must be positive")

    @classmethod
    def uniform(cls, n, offset_us=31.0, quantization_us=20.0):
        return cls(np.full(n, offset_us), np.full(n, quantization_us))


@dataclass
class ThrusterLayout:
    """Thruster positions/directions in the body frame plus thrust and power limits.

    power_curve holds polynomial coefficients of P(u) in watts for normalized
    effort u in [-1, 1], lowest order first; the default is P_max * u^2.
    """

    positions: np.ndarray          # (N, 3) m
    directions: np.ndarray         # (N, 3) unit vectors
    max_thrust: np.ndarray         # (N,) N
    power_curve: np.ndarray        # (N, k) polynomial coefficients

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        self.directions = np.asarray(self.directions, dtype=float)
        self.max_thrust = np.asarray(self.max_thrust, dtype=float)
        self.power_curve = np.asarray(self.power_curve, dtype=float)
        norms = np.linalg.norm(self.directions, axis=1)
        if not np.allclose(norms, 1.0, atol=1e-9):
            raise ValueError("thruster directions must be unit vectors")
        self.torque_arms = np.cross(self.positions, self.directions)
        if np.linalg.matrix_rank(self.wrench_matrix()) < 6:
            raise ValueError("thruster layout does not span all 6 DOF")

    @property
    def count(self):
        return len(self.max_thrust)

    def wrench_matrix(self):
        """6xN map from normalized efforts to body wrench (N, N*m)."""
        f = self.directions.T * self.max_thrust          # (3, N)
        tau = self.torque_arms.T * self.max_thrust
        return np.vstack([f, tau])

    def wrench(self, thrust_forces):
        """Body wrench (force, torque) from per-thruster forces in newtons."""
        thrust_forces = np.asarray(thrust_forces, dtype=float)
        force = self.directions.T @ thrust_forces
        torque = self.torque_arms.T @ thrust_forces
        return np.concatenate([force, torque])

    def power(self, efforts):
        """Total electrical power for normalized efforts."""
        efforts = np.asarray(efforts, dtype=float)
        total = 0.0
        for coeffs, u in zip(self.power_curve, efforts):
            total += float(np.polynomial.polynomial.polyval(u, coeffs))
        return total


def default_thruster_layout(max_thrust=30.0, max_power=120.0):
    """Generic 8-thruster vectored arrangement: 4 vertical + 4 horizontal at 45 deg.

    The source vehicle's layout is not public; this one spans all 6 DOF and is
    declared in the scenario file.
    """
    c = np.sqrt(0.5)
    positions = np.array([
        # vertical (heave / roll / pitch)
        [0.25, 0.20, 0.0],
        [0.25, -0.20, 0.0],
        [-0.25, 0.20, 0.0],
        [-0.25, -0.20, 0.0],
        # horizontal vectored (surge / sway / yaw)
        [0.30, 0.25, 0.0],
        [0.30, -0.25, 0.0],
        [-0.30, 0.25, 0.0],
        [-0.30, -0.25, 0.0],
    ])
    directions = np.array([
        [0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0],
        [c, -c, 0.0],
        [c, c, 0.0],
        [c, c, 0.0],
        [c, -c, 0.0],
    ])
    n = len(positions)
    return ThrusterLayout(
        positions=positions,
        directions=directions,
        max_thrust=np.full(n, float(max_thrust)),
        power_curve=np.tile([0.0, 0.0, float(max_power)], (n, 1)),
    )


def quantize(value_us, step_us):
    """Snap pulse widths to the ESC's internal grid (round to nearest step)."""
    return np.round(np.asarray(value_us, dtype=float) / step_us) * step_us


def thrust_from_us(effective_us, max_thrust):
    """Symmetric piecewise-linear thrust curve with a [1475, 1525] us deadband.

    Reaches +/-max_thrust at 1900/1100 us. The manufacturer curve is nonlinear
    but a linear one is sufficient for closed-loop testing (stated in config).
    """
    us = np.asarray(effective_us, dtype=float)
    fwd = np.clip((us - DEADBAND_HIGH) / (PWM_MAX - DEADBAND_HIGH), 0.0, 1.0)
    rev = np.clip((DEADBAND_LOW - us) / (DEADBAND_LOW - PWM_MIN), 0.0, 1.0)
    return (fwd - rev) * max_thrust


def apply_pwm(pwm_us, defects, voltage, layout, nominal_voltage=14.8):
    """Thrust produced by each ESC for the pulse widths actually sent.

    Models the hardware defect: the ESC sees quantize(pwm - offset). Thrust is
    scaled by voltage / nominal_voltage. Out-of-range pulses are clamped and
    reported in the returned flags array.
    """
    pwm_us = np.asarray(pwm_us, dtype=float)
    clamped = (pwm_us < PWM_MIN) | (pwm_us > PWM_MAX + defects.offset_us)
    pwm_us = np.clip(pwm_us, PWM_MIN, PWM_MAX + defects.offset_us)
    effective = quantize(pwm_us - defects.offset_us, defects.quantization_us)
    thrust = thrust_from_us(effective, layout.max_thrust) * (voltage / nominal_voltage)
    return thrust, effective, clamped
