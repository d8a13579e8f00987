"""Polar sonar images, Cartesian conversion, and PGM import/export."""

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class PolarSonarImage:
    intensities: np.ndarray    # (B, R) 0..255
    bearing_start: float       # rad, relative to the sensor boresight
    bearing_step: float        # rad per bearing row
    bin_length: float          # m per range bin
    min_range: float           # m; bins span [min_range, max_range]
    sensor_pose: np.ndarray = field(
        default_factory=lambda: np.zeros(3))  # world x, y, yaw

    def __post_init__(self):
        self.intensities = np.asarray(self.intensities, dtype=float)
        self.sensor_pose = np.asarray(self.sensor_pose, dtype=float)
        if self.min_range < 0:
            raise ValueError("min_range must be nonnegative")

    @property
    def n_bearings(self):
        return self.intensities.shape[0]

    @property
    def n_bins(self):
        return self.intensities.shape[1]

    @property
    def max_range(self):
        return self.min_range + self.n_bins * self.bin_length

    def bearing_of(self, b_idx):
        return self.bearing_start + (np.asarray(b_idx) + 0.5) * self.bearing_step

    def range_of(self, r_idx):
        return self.min_range + (np.asarray(r_idx) + 0.5) * self.bin_length


@dataclass
class CartesianPointSet:
    """Sensor-frame points with their raster provenance kept alongside, so
    cluster shape analysis can walk the native bearing-range grid. Grid
    fixtures (unit-pitch point sets) override the raster steps directly."""

    xy: np.ndarray             # (n, 2) m, sensor frame (x = boresight)
    intensity: np.ndarray      # (n,)
    polar_idx: np.ndarray      # (n, 2) int (bearing row, range bin)
    bearing_step: float
    bin_length: float
    min_range: float
    max_range: float
    raster_steps: tuple | None = None      # (step_row, step_col) override, m
    uniform_cell_area: float | None = None  # per-cell area override, m^2

    def __len__(self):
        return len(self.xy)

    def select(self, mask):
        return CartesianPointSet(self.xy[mask], self.intensity[mask],
                                 self.polar_idx[mask], self.bearing_step,
                                 self.bin_length, self.min_range,
                                 self.max_range, self.raster_steps,
                                 self.uniform_cell_area)


def grid_point_set(xy, pitch=1.0, intensity=None):
    """Point set on a regular grid (test fixtures, non-sonar sources)."""
    xy = np.asarray(xy, dtype=float)
    if intensity is None:
        intensity = np.full(len(xy), 255.0)
    idx = np.round(xy / pitch).astype(int)
    return CartesianPointSet(
        xy=xy, intensity=np.asarray(intensity, dtype=float),
        polar_idx=idx, bearing_step=0.0, bin_length=pitch,
        min_range=0.0, max_range=float("inf"),
        raster_steps=(pitch, pitch), uniform_cell_area=pitch * pitch)


def polar_to_cartesian(img: PolarSonarImage) -> CartesianPointSet:
    """Map every nonzero cell (bearing, range) to (r cos, r sin).

    Curved arcs in the polar raster become straight features here, which is
    what makes the downstream classification geometric rather than warped.
    """
    b_idx, r_idx = np.nonzero(img.intensities > 0)
    r = img.range_of(r_idx)
    theta = img.bearing_of(b_idx)
    xy = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=1)
    return CartesianPointSet(
        xy=xy,
        intensity=img.intensities[b_idx, r_idx],
        polar_idx=np.stack([b_idx, r_idx], axis=1),
        bearing_step=img.bearing_step,
        bin_length=img.bin_length,
        min_range=img.min_range,
        max_range=img.max_range,
    )


def threshold_filter(points: CartesianPointSet, min_intensity):
    """Drop low-intensity returns (the noise floor)."""
    if not 0 <= min_intensity <= 255:
        raise ValueError("min_intensity must lie in [0, 255]")
    return points.select(points.intensity >= min_intensity)


def export_pgm(img: PolarSonarImage, path):
    """Plain (P2) PGM plus a JSON sidecar with the scan geometry."""
    path = Path(path)
    data = np.clip(np.round(img.intensities), 0, 255).astype(int)
    with open(path, "w") as f:
        f.write("P2\n")
        f.write(f"{data.shape[1]} {data.shape[0]}\n255\n")
        for row in data:
            f.write(" ".join(str(v) for v in row) + "\n")
    meta = {
        "bearing_start": img.bearing_start,
        "bearing_step": img.bearing_step,
        "bin_length": img.bin_length,
        "min_range": img.min_range,
        "max_range": img.max_range,
        "sensor_pose": img.sensor_pose.tolist(),
    }
    path.with_suffix(path.suffix + ".meta.json").write_text(
        json.dumps(meta, indent=2, sort_keys=True))


def import_pgm(path):
    path = Path(path)
    tokens = []
    with open(path) as f:
        for line in f:
            line = line.split("#", 1)[0]
            tokens.extend(line.split())
    if tokens[0] != "P2":
        raise ValueError("expected a plain (P2) PGM")
    w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    data = np.array([int(t) for t in tokens[4:4 + w * h]],
                    dtype=float).reshape(h, w)
    meta = json.loads(path.with_suffix(path.suffix + ".meta.json").read_text())
    return PolarSonarImage(
        intensities=data,
        bearing_start=meta["bearing_start"],
        bearing_step=meta["bearing_step"],
        bin_length=meta["bin_length"],
        min_range=meta["min_range"],
        sensor_pose=np.asarray(meta["sensor_pose"]),
    )
