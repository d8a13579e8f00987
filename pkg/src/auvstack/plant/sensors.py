"""Raw sensor emission, including the pathologies observed on the bench.

The IMU reports orientation in NED (right-handed, forward-right-down body
axes) while the vehicle truth is ENU; the DVL is left-handed (y negated
relative to the body frame, the one documented convention the estimator
inverts exactly) and measures at its mount point; the pressure sensor can
withhold samples and release them in bursts. Internal vitals cover voltage
sag, a temperature trajectory, and an optional humidity leak event.
"""

from dataclasses import dataclass, field

import numpy as np

from .. import quaternions as quat

STANDARD_ATMOSPHERE = 101325.0

# world axis relabel NED<->ENU: 180 deg about (1,1,0)/sqrt(2)
_Q_WORLD = np.array([0.0, np.sqrt(0.5), np.sqrt(0.5), 0.0])
# body axis relabel forward-left-up <-> forward-right-down: 180 deg about x
_Q_BODY = np.array([0.0, 1.0, 0.0, 0.0])


def enu_to_ned_quat(q_enu):
    """Express a body->ENU orientation as the equivalent body->NED quaternion.

    Same sandwich as the inverse map: both axis relabels are involutions.
    """
    return quat.multiply(_Q_WORLD, quat.multiply(q_enu, _Q_BODY))


def flu_to_frd(v):
    """Body vector from forward-left-up axes to forward-right-down axes."""
    v = np.asarray(v, dtype=float)
    return np.array([v[0], -v[1], -v[2]])


@dataclass
class ImuConfig:
    rate: float = 50.0
    orientation_noise: float = 0.005   # rad (sigma, small-angle)
    rate_noise: float = 0.002          # rad/s


@dataclass
class DvlConfig:
    rate: float = 25.0
    velocity_noise: float = 0.01       # m/s
    mount_offset: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.mount_offset = np.asarray(self.mount_offset, dtype=float)


@dataclass
class PressureConfig:
    rate: float = 30.0
    noise: float = 20.0                # Pa
    burst_mode: bool = False
    burst_period: float = 2.0          # s
    surface_pressure: float = STANDARD_ATMOSPHERE


@dataclass
class InternalConfig:
    rate: float = 5.0
    voltage_nominal: float = 14.8
    sag_per_watt: float = 0.002        # V per commanded watt
    temp_ambient: float = 25.0
    temp_plateau: float = 55.0
    temp_time_constant: float = 600.0  # s
    humidity_baseline: float = 40.0
    leak_event: float | None = None    # s, humidity starts rising afterwards
    leak_rate: float = 1.0             # points per s


@dataclass
class SensorSuiteConfig:
    imu: ImuConfig = field(default_factory=ImuConfig)
    dvl: DvlConfig = field(default_factory=DvlConfig)
    pressure: PressureConfig = field(default_factory=PressureConfig)
    internal: InternalConfig = field(default_factory=InternalConfig)

    def __post_init__(self):
        for c in (self.imu, self.dvl, self.pressure, self.internal):
            if c.rate <= 0:
                raise ValueError("sensor rates must be positive")


@dataclass
class ImuSample:
    stamp: float
    orientation_ned: np.ndarray   # body(frd) -> NED
    angular_rate: np.ndarray      # rad/s, frd body frame


@dataclass
class DvlSample:
    stamp: float
    velocity: np.ndarray          # m/s, left-handed instrument frame


@dataclass
class PressureSample:
    stamp: float
    pressure: float               # Pa


@dataclass
class InternalSample:
    stamp: float
    voltage: float
    temperature: float
    humidity: float


class SensorEmitter:
    """Generates raw samples on each sensor's schedule. Owns no wall clock;
    the simulator drives it with monotone sim time."""

    def __init__(self, cfg: SensorSuiteConfig, water_density=1000.0, seed=0):
        self.cfg = cfg
        self.water_density = water_density
        self.rng = np.random.default_rng(seed)
        self.commanded_power = 0.0  # W, set by the simulator each tick
        self._next = {
            "imu": 0.0,
            "dvl": 0.0,
            "pressure": 0.0,
            "internal": 0.0,
        }
        self._burst_buffer = []
        self._next_burst = cfg.pressure.burst_period
        self._last_t = -np.inf

    def emit(self, body, t):
        """All samples due at or before t, as (topic, sample) pairs."""
        if t < self._last_t:
            raise ValueError("time must be monotone nondecreasing")
        self._last_t = t
        out = []
        while self._next["imu"] <= t:
            out.append(("imu", self._imu(body, self._next["imu"])))
            self._next["imu"] += 1.0 / self.cfg.imu.rate
        while self._next["dvl"] <= t:
            out.append(("dvl", self._dvl(body, self._next["dvl"])))
            self._next["dvl"] += 1.0 / self.cfg.dvl.rate
        while self._next["pressure"] <= t:
            sample = self._pressure(body, self._next["pressure"])
            if self.cfg.pressure.burst_mode:
                self._burst_buffer.append(sample)
            else:
                out.append(("pressure", sample))
            self._next["pressure"] += 1.0 / self.cfg.pressure.rate
        if self.cfg.pressure.burst_mode and t >= self._next_burst:
            out.extend(("pressure", s) for s in self._burst_buffer)
            self._burst_buffer = []
            self._next_burst += self.cfg.pressure.burst_period
        while self._next["internal"] <= t:
            out.append(("internal", self._internal(self._next["internal"])))
            self._next["internal"] += 1.0 / self.cfg.internal.rate
        return out

    def _imu(self, body, stamp):
        c = self.cfg.imu
        q_ned = enu_to_ned_quat(body.orientation)
        if c.orientation_noise > 0:
            axis = self.rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            q_ned = quat.multiply(q_ned, quat.from_axis_angle(
                axis, self.rng.normal(0.0, c.orientation_noise)))
        rate = flu_to_frd(body.angular_velocity) + self.rng.normal(0.0, c.rate_noise, 3)
        return ImuSample(stamp, quat.canonical(q_ned), rate)

    def _dvl(self, body, stamp):
        c = self.cfg.dvl
        v_mount = body.linear_velocity + np.cross(body.angular_velocity, c.mount_offset)
        v = v_mount + self.rng.normal(0.0, c.velocity_noise, 3)
        return DvlSample(stamp, np.array([v[0], -v[1], v[2]]))

    def _pressure(self, body, stamp):
        c = self.cfg.pressure
        p = c.surface_pressure + self.water_density * 9.81 * body.depth
        return PressureSample(stamp, p + self.rng.normal(0.0, c.noise))

    def _internal(self, stamp):
        c = self.cfg.internal
        voltage = c.voltage_nominal - c.sag_per_watt * self.commanded_power
        temp = c.temp_plateau + (c.temp_ambient - c.temp_plateau) * np.exp(
            -stamp / c.temp_time_constant)
        humidity = c.humidity_baseline
        if c.leak_event is not None and stamp > c.leak_event:
            humidity = min(100.0, humidity + c.leak_rate * (stamp - c.leak_event))
        return InternalSample(stamp, voltage, temp, humidity)
