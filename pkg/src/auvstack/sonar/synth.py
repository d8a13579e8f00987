"""Scanning-sonar synthesizer: ray-cast returns from the pool world.

Test harness for the sonar pipeline. Each bearing casts a ray from the
sensor; the nearest object paints a pulse-shaped return at its range, and
(optionally) a first-order acoustic reflection repeats that return at twice
the range, attenuated. Ranges under the sonar's minimum return nothing at
all, mirroring the hardware blind zone.
"""

from dataclasses import dataclass, field

import numpy as np

from .image import PolarSonarImage

VISIBLE_KINDS = {"gate", "buoy", "wall_panel", "octagon"}


@dataclass
class ScanConfig:
    bearing_start: float = -np.pi          # rad, relative to boresight
    bearing_span: float = 2.0 * np.pi
    bearing_step: float = np.deg2rad(0.5)
    bin_length: float = 0.1                # m
    min_range: float = 1.0                 # m, hardware blind zone
    max_range: float = 25.0                # m
    noise_mean: float = 18.0
    noise_std: float = 5.0
    object_intensity: float = 220.0
    pulse_bins: float = 1.2                # gaussian sigma of the return
    reflections: bool = True
    reflection_gain: float = 0.55
    include_pool_walls: bool = True


def _ray_circle(origin, direction, center, radius):
    oc = origin - center
    b = oc @ direction
    c = oc @ oc - radius * radius
    disc = b * b - c
    if disc < 0:
        return None
    t = -b - np.sqrt(disc)
    return t if t > 0 else None


def _ray_segment(origin, direction, p0, p1):
    seg = p1 - p0
    denom = direction[0] * seg[1] - direction[1] * seg[0]
    if abs(denom) < 1e-12:
        return None
    diff = p0 - origin
    t = (diff[0] * seg[1] - diff[1] * seg[0]) / denom
    s = (diff[0] * direction[1] - diff[1] * direction[0]) / -denom
    if t > 0 and 0.0 <= s <= 1.0:
        return t
    return None


def _world_segments(world, cfg):
    segments = []
    for obj in world.objects:
        if obj.kind in ("gate", "wall_panel"):
            half = obj.extent[0] / 2.0
            across = np.array([-np.sin(obj.yaw), np.cos(obj.yaw)])
            center = obj.position[:2]
            segments.append((center - half * across, center + half * across))
    if cfg.include_pool_walls:
        lo, hi = world.bounds_min[:2], world.bounds_max[:2]
        corners = [np.array([lo[0], lo[1]]), np.array([hi[0], lo[1]]),
                   np.array([hi[0], hi[1]]), np.array([lo[0], hi[1]])]
        for i in range(4):
            segments.append((corners[i], corners[(i + 1) % 4]))
    return segments


def _world_circles(world):
    circles = []
    for obj in world.objects:
        if obj.kind in ("buoy", "octagon"):
            circles.append((obj.position[:2], obj.extent[0] / 2.0))
    return circles


def synthesize_scan(world, sensor_pose, cfg: ScanConfig = None, seed=0):
    """Ray-cast a sweep from sensor_pose = (x, y, yaw). Deterministic."""
    cfg = cfg or ScanConfig()
    origin = np.asarray(sensor_pose[:2], dtype=float)
    if not world.contains([origin[0], origin[1],
                           (world.bounds_min[2] + world.bounds_max[2]) / 2]):
        raise ValueError("sensor outside pool bounds")
    yaw = float(sensor_pose[2])
    rng = np.random.default_rng(seed)

    n_bearings = int(round(cfg.bearing_span / cfg.bearing_step))
    n_bins = int(round((cfg.max_range - cfg.min_range) / cfg.bin_length))
    img = rng.normal(cfg.noise_mean, cfg.noise_std, size=(n_bearings, n_bins))
    np.clip(img, 0.0, 255.0, out=img)

    segments = _world_segments(world, cfg)
    circles = _world_circles(world)
    bins = np.arange(n_bins)

    def paint(row, hit_range, gain):
        center_bin = (hit_range - cfg.min_range) / cfg.bin_length - 0.5
        profile = cfg.object_intensity * gain * np.exp(
            -0.5 * ((bins - center_bin) / cfg.pulse_bins) ** 2)
        np.maximum(img[row], profile, out=img[row])

    for row in range(n_bearings):
        theta = yaw + cfg.bearing_start + (row + 0.5) * cfg.bearing_step
        d = np.array([np.cos(theta), np.sin(theta)])
        best = None
        for center, radius in circles:
            t = _ray_circle(origin, d, center, radius)
            if t is not None and (best is None or t < best):
                best = t
        for p0, p1 in segments:
            t = _ray_segment(origin, d, p0, p1)
            if t is not None and (best is None or t < best):
                best = t
        if best is None or best < cfg.min_range or best > cfg.max_range:
            continue
        paint(row, best, 1.0)
        if cfg.reflections and 2.0 * best <= cfg.max_range:
            paint(row, 2.0 * best, cfg.reflection_gain)

    np.clip(img, 0.0, 255.0, out=img)
    return PolarSonarImage(
        intensities=img,
        bearing_start=cfg.bearing_start,
        bearing_step=cfg.bearing_step,
        bin_length=cfg.bin_length,
        min_range=cfg.min_range,
        sensor_pose=np.array([origin[0], origin[1], yaw]),
    )
