"""Synthetic hydrophone captures: pinger pressure waves plus noise.

Each channel carries windowed sinusoid bursts at the pinger frequency,
delayed per element by geometric distance over sound speed and attenuated
1/distance, on top of Gaussian noise. Deterministic under a seed; this is
the test bed the detection pipeline is calibrated against.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.io.wavfile

from .. import quaternions as quat


@dataclass
class HydrophoneArray:
    elements: np.ndarray       # (3, 3) positions, m body frame
    sample_rate: float         # Hz

    def __post_init__(self):
        self.elements = np.asarray(self.elements, dtype=float)
        if self.elements.shape != (3, 3):
            raise ValueError("expected exactly 3 hydrophone elements")
        spans = [np.linalg.norm(self.elements[i] - self.elements[j])
                 for i in range(3) for j in range(i + 1, 3)]
        if max(spans) > 0.15:
            raise ValueError("element spacing exceeds 0.15 m (a few inches)")
        # collinearity: cross product of the two edge vectors
        e1 = self.elements[1] - self.elements[0]
        e2 = self.elements[2] - self.elements[0]
        if np.linalg.norm(np.cross(e1, e2)) < 1e-9:
            raise ValueError("elements must be non-collinear")

    @property
    def max_spacing(self):
        return max(np.linalg.norm(self.elements[i] - self.elements[j])
                   for i in range(3) for j in range(i + 1, 3))


def default_array(sample_rate=625000.0):
    # equilateral: isotropic bearing accuracy, no soft directions
    return HydrophoneArray(
        elements=np.array([[0.0, 0.0, 0.0],
                           [0.12, 0.0, 0.0],
                           [0.06, 0.10392304845413263, 0.0]]),
        sample_rate=sample_rate)


@dataclass
class AcousticCapture:
    channels: np.ndarray       # (3, n) normalized amplitude
    sample_rate: float
    start_time: float = 0.0

    def __post_init__(self):
        self.channels = np.asarray(self.channels, dtype=float)
        if self.channels.ndim != 2 or self.channels.shape[0] != 3:
            raise ValueError("capture must hold 3 equal-length channels")

    @property
    def duration(self):
        return self.channels.shape[1] / self.sample_rate


def synthesize_capture(array, array_position, array_orientation, pinger,
                       noise_std, duration, seed, sound_speed=1500.0,
                       amplitude=1.0, start_time=0.0):
    """Simulate the pressure waves a pinger induces at each element.

    array_position/orientation place the vehicle (and its array) in the
    world. Ping emissions sit on the absolute k * ping_interval grid, so
    captures taken at different start times stay mutually consistent.
    """
    if duration < pinger.ping_interval:
        raise ValueError("duration must cover at least one ping interval")
    if array.sample_rate < 2.5 * pinger.frequency:
        raise ValueError("sample rate below 2.5x pinger frequency")
    rng = np.random.default_rng(seed)
    n = int(round(duration * array.sample_rate))
    t0 = float(start_time)
    world_elements = [np.asarray(array_position, dtype=float)
                      + quat.rotate(array_orientation, e)
                      for e in array.elements]
    dists = [float(np.linalg.norm(np.asarray(pinger.position) - we))
             for we in world_elements]
    if min(dists) < 1e-6:
        raise ValueError("pinger coincides with a hydrophone element")

    channels = rng.normal(0.0, noise_std, size=(3, n)) if noise_std > 0 \
        else np.zeros((3, n))
    times = t0 + np.arange(n) / array.sample_rate
    first_ping = int(np.floor(t0 / pinger.ping_interval))
    last_ping = int(np.ceil((t0 + duration) / pinger.ping_interval)) + 1
    for k in range(first_ping, last_ping):
        emit = k * pinger.ping_interval
        for ch, d in enumerate(dists):
            arrival = emit + d / sound_speed
            i0 = int(np.ceil((arrival - t0) * array.sample_rate))
            i1 = int(np.floor((arrival + pinger.ping_duration - t0)
                              * array.sample_rate))
            if i1 < 0 or i0 >= n:
                continue
            i0, i1 = max(i0, 0), min(i1, n - 1)
            tt = times[i0:i1 + 1] - arrival
            channels[ch, i0:i1 + 1] += (amplitude / d) * np.sin(
                2.0 * np.pi * pinger.frequency * tt)
    return AcousticCapture(channels, array.sample_rate, t0)


def export_wav(capture, path):
    """3-channel float32 WAV for fixture reuse."""
    data = capture.channels.T.astype(np.float32)
    scipy.io.wavfile.write(path, int(capture.sample_rate), data)


def import_wav(path):
    rate, data = scipy.io.wavfile.read(path)
    if data.ndim != 2 or data.shape[1] != 3:
        raise ValueError("expected a 3-channel WAV")
    return AcousticCapture(data.T.astype(float), float(rate))
