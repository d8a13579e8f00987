"""The 100 Hz control tick: errors -> PID -> buoyancy offset -> allocation
-> ESC-corrected PWM, with on-the-fly gain updates persisted to disk."""

import io
import time
from dataclasses import dataclass, field

import numpy as np
import tomli

from .allocation import AllocationProblem, allocate
from .buoyancy import buoyancy_offset
from .errors import Setpoint, StaleStateError, compute_error
from .pid import AXES, PidBank, PidGains
from .pwm import deadband_pwm, effort_to_pwm

# Tuned against the default scenario plant; scenario files may override.
DEFAULT_GAINS = {
    "x": PidGains(kp=0.5, ki=0.06, kd=0.8),
    "y": PidGains(kp=0.5, ki=0.06, kd=0.8),
    "z": PidGains(kp=0.6, ki=0.06, kd=0.9),
    "roll": PidGains(kp=0.8, ki=0.0, kd=0.25),
    "pitch": PidGains(kp=0.8, ki=0.0, kd=0.25),
    "yaw": PidGains(kp=0.7, ki=0.0, kd=0.3),
}


@dataclass
class ControllerConfig:
    rate: float = 100.0
    wrench_scale: np.ndarray = field(
        default_factory=lambda: np.array([120.0, 120.0, 120.0, 40.0, 40.0, 40.0]))
    buoyancy_force: float = 8.0          # net buoyant force to cancel, N
    buoyancy_arm: np.ndarray = field(default_factory=lambda: np.zeros(3))
    staleness: float = 0.5               # s

    def __post_init__(self):
        self.wrench_scale = np.asarray(self.wrench_scale, dtype=float)
        self.buoyancy_arm = np.asarray(self.buoyancy_arm, dtype=float)


@dataclass
class TickResult:
    errors: np.ndarray            # per-axis error fed to PID
    axis_efforts: np.ndarray      # normalized PID/power outputs per axis
    wrench_target: np.ndarray     # N / N*m handed to the allocator
    thruster_efforts: np.ndarray
    pwm_us: np.ndarray
    power: float                  # W drawn by the allocation
    armed: bool
    held: bool                    # stale state: previous output held
    duration: float               # wall seconds spent in the tick


class Controller:
    def __init__(self, layout, esc_profile, gains=None, cfg=None,
                 gains_path=None):
        self.layout = layout
        self.esc = esc_profile
        self.cfg = cfg or ControllerConfig()
        self.gains_path = gains_path
        if gains is None and gains_path is not None:
            try:
                gains = load_gains(gains_path)
            except FileNotFoundError:
                gains = None
        self.bank = PidBank(gains or {k: PidGains(**vars(v))
                                      for k, v in DEFAULT_GAINS.items()},
                            self.cfg.rate)
        self.wrench_matrix = layout.wrench_matrix()
        # rank-validated once here; per tick only the target and budget change
        self._problem = AllocationProblem(
            wrench_matrix=self.wrench_matrix,
            target_wrench=np.zeros(6),
            effort_bounds=np.ones(layout.count),
            power_budget=np.inf,
            power_curves=layout.power_curve,
        )
        self.armed = True
        self._pending_gains = []
        self._last = TickResult(
            np.zeros(6), np.zeros(6), np.zeros(6),
            np.zeros(layout.count), deadband_pwm(layout.count),
            0.0, True, False, 0.0)

    # -- gain management -------------------------------------------------

    def update_gains(self, axis, new_gains):
        """Queue a gain change; applied at the next tick boundary without
        resetting integrator state, and persisted if a gains path is set."""
        if axis not in AXES:
            raise ValueError(f"unknown axis {axis!r}")
        new_gains.validate(self.cfg.rate)
        self._pending_gains.append((axis, new_gains))
        if self.gains_path is not None:
            merged = dict(self.bank.gains)
            for a, g in self._pending_gains:
                merged[a] = g
            save_gains(merged, self.gains_path)

    def current_gains(self, axis):
        for a, g in reversed(self._pending_gains):
            if a == axis:
                return g
        return self.bank.gains[axis]

    # -- arming ----------------------------------------------------------

    def set_armed(self, armed):
        """Disarming forces deadband PWM on the very next tick."""
        self.armed = bool(armed)
        if not armed:
            self.bank.reset()

    # -- the tick --------------------------------------------------------

    def tick(self, state, setpoint: Setpoint, now=None, power_budget=np.inf):
        t0 = time.perf_counter()
        for axis, g in self._pending_gains:
            self.bank.update_gains(axis, g)
        self._pending_gains.clear()

        n = self.layout.count
        if not self.armed:
            result = TickResult(np.zeros(6), np.zeros(6), np.zeros(6),
                                np.zeros(n), deadband_pwm(n), 0.0,
                                False, False, time.perf_counter() - t0)
            self._last = result
            return result

        try:
            errors = compute_error(setpoint, state, now=now,
                                   staleness=self.cfg.staleness)
        except StaleStateError:
            held = TickResult(self._last.errors, self._last.axis_efforts,
                              self._last.wrench_target,
                              self._last.thruster_efforts, self._last.pwm_us,
                              self._last.power, True, True,
                              time.perf_counter() - t0)
            self._last = held
            return held

        dt = 1.0 / self.cfg.rate
        axis_efforts = np.empty(6)
        for i, axis in enumerate(AXES):
            if setpoint.mode(axis) == "power":
                axis_efforts[i] = setpoint.axes[axis].target
            elif setpoint.mode(axis) is None:
                axis_efforts[i] = 0.0
            else:
                axis_efforts[i] = self.bank.step_axis(axis, errors[i], dt)
        axis_efforts = np.clip(axis_efforts, -1.0, 1.0)

        wrench = axis_efforts * self.cfg.wrench_scale
        wrench = wrench + buoyancy_offset(state.orientation,
                                          self.cfg.buoyancy_force,
                                          self.cfg.buoyancy_arm)

        self._problem.target_wrench = wrench
        self._problem.power_budget = power_budget
        alloc = allocate(self._problem)
        pwm = effort_to_pwm(alloc.efforts, self.esc)

        result = TickResult(errors, axis_efforts, wrench, alloc.efforts, pwm,
                            alloc.power, True, False,
                            time.perf_counter() - t0)
        self._last = result
        return result


# -- gain persistence (flat TOML, one table per axis) ---------------------

def save_gains(gains_by_axis, path):
    buf = io.StringIO()
    for axis in AXES:
        g = gains_by_axis[axis]
        buf.write(f"[{axis}]\n")
        buf.write(f"kp = {float(g.kp)!r}\n")
        buf.write(f"ki = {float(g.ki)!r}\n")
        buf.write(f"kd = {float(g.kd)!r}\n")
        buf.write(f"integral_clamp = {float(g.integral_clamp)!r}\n")
        buf.write(f"derivative_cutoff = {float(g.derivative_cutoff)!r}\n\n")
    with open(path, "w") as f:
        f.write(buf.getvalue())


def load_gains(path):
    with open(path, "rb") as f:
        raw = tomli.load(f)
    return {axis: PidGains(**raw[axis]) for axis in raw}
