from .allocation import AllocationProblem, AllocationResult, allocate, box_lsq
from .biquad import Biquad, butterworth_coefficients
from .buoyancy import buoyancy_offset
from .controller import (Controller, ControllerConfig, DEFAULT_GAINS,
                         TickResult, load_gains, save_gains)
from .errors import AxisTarget, Setpoint, StaleStateError, compute_error
from .pid import AXES, PidAxisState, PidBank, PidGains, pid_step
from .pwm import deadband_pwm, effort_to_pwm

__all__ = [
    "AllocationProblem", "AllocationResult", "allocate", "box_lsq",
    "Biquad", "butterworth_coefficients", "buoyancy_offset",
    "Controller", "ControllerConfig", "DEFAULT_GAINS", "TickResult",
    "load_gains", "save_gains", "AxisTarget", "Setpoint", "StaleStateError",
    "compute_error", "AXES", "PidAxisState", "PidBank", "PidGains",
    "pid_step", "deadband_pwm", "effort_to_pwm",
]
