"""Single-owner simulation stepper: vehicle, ESC defects, sensors, markers.

The simulator owns time. Each step takes the PWM command for this tick,
applies the ESC defect model at the sagged bus voltage, advances the rigid
body, and returns whatever raw samples came due. Pool walls are hard clamps
(velocity zeroed on contact); dropped markers fall straight down and are
scored against bin footprints.
"""

from dataclasses import dataclass, field

import numpy as np

from .rigid_body import RigidBody, neutral_body, step_dynamics
from .sensors import SensorEmitter, SensorSuiteConfig
from .thrusters import EscDefectProfile, ThrusterLayout, apply_pwm, default_thruster_layout
from .world import WorldModel, default_world


@dataclass
class MarkerDrop:
    t: float
    side: str             # "left" | "right"
    landed_at: np.ndarray  # xy
    scored_bin: str        # bin tag or "" for a miss


class Simulator:
    def __init__(self, world: WorldModel = None, body: RigidBody = None,
                 layout: ThrusterLayout = None, esc: EscDefectProfile = None,
                 sensors: SensorSuiteConfig = None, dt=0.01, seed=0,
                 nominal_voltage=14.8, markers_loaded=2):
        self.world = world or default_world()
        self.body = body or neutral_body()
        self.layout = layout or default_thruster_layout()
        self.esc = esc or EscDefectProfile.uniform(self.layout.count)
        self.dt = dt
        self.t = 0.0
        self.nominal_voltage = nominal_voltage
        self.voltage = nominal_voltage
        self.emitter = SensorEmitter(sensors or SensorSuiteConfig(),
                                     water_density=self.world.water.density,
                                     seed=seed)
        self.markers_loaded = markers_loaded
        self.marker_drops = []
        self.last_thrust = np.zeros(self.layout.count)
        self.clamped_pwm = np.zeros(self.layout.count, dtype=bool)

    def step(self, pwm_us):
        """Advance one tick under the given per-thruster pulse widths.

        Returns the list of (topic, sample) pairs that came due this tick.
        """
        thrust, effective, clamped = apply_pwm(
            pwm_us, self.esc, self.voltage, self.layout, self.nominal_voltage)
        self.last_thrust = thrust
        self.clamped_pwm = clamped
        self.body = step_dynamics(self.body, thrust, self.layout, self.dt)
        self._clamp_to_pool()
        self.t += self.dt

        # commanded power drives voltage sag; effort proxied by thrust ratio
        efforts = thrust / self.layout.max_thrust
        power = self.layout.power(efforts)
        self.emitter.commanded_power = power
        self.voltage = (self.nominal_voltage
                        - self.emitter.cfg.internal.sag_per_watt * power)
        return self.emitter.emit(self.body, self.t)

    def _clamp_to_pool(self):
        pos = self.body.position
        lo, hi = self.world.bounds_min, self.world.bounds_max
        v_world = None
        for i in range(3):
            if pos[i] < lo[i] or pos[i] > hi[i]:
                if v_world is None:
                    from .. import quaternions as quat
                    v_world = quat.rotate(self.body.orientation,
                                          self.body.linear_velocity)
                pos[i] = min(max(pos[i], lo[i]), hi[i])
                v_world[i] = 0.0
        if v_world is not None:
            from .. import quaternions as quat
            self.body.linear_velocity = quat.rotate_inverse(
                self.body.orientation, v_world)

    def drop_marker(self, side):
        """Release one marker; it falls straight down from the dropper.

        The dropper sits slightly left/right of the body centerline. Scored
        against bin footprints on the pool floor.
        """
        if self.markers_loaded <= 0:
            return None
        self.markers_loaded -= 1
        from .. import quaternions as quat
        offset = np.array([0.0, 0.06 if side == "left" else -0.06, 0.0])
        release = self.body.position + quat.rotate(self.body.orientation, offset)
        landed = release[:2].copy()
        scored = ""
        for b in self.world.of_kind("bin"):
            half = b.extent[:2] / 2.0
            if np.all(np.abs(landed - b.position[:2]) <= half):
                scored = b.tag or "bin"
                break
        drop = MarkerDrop(self.t, side, landed, scored)
        self.marker_drops.append(drop)
        return drop
