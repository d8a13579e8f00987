"""Desk-scale AUV autonomy stack.

Subpackages mirror the onboard subsystems: a simulated plant (vehicle,
thrusters, pool world, raw sensors), a state estimator, six-axis PID controls
with constrained thrust allocation, acoustic pinger localization, scanning
sonar processing, HSV vision, a resumable-task mission planner, and the
telemetry bridge that ties them together for logging and operator control.
"""

__version__ = "0.1.0"
