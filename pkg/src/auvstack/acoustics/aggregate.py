"""Aggregate absolute pinger position from octant guesses over time.

Each observation contributes a world-frame bearing ray (robot yaw plus the
octant's center bearing, the +/-22.5 degree wedge giving every ray equal
weight). The estimate minimizes summed squared perpendicular distances to
the rays by gradient descent; near-parallel ray sets yield a direction-only
result instead of a meaningless far-away intersection.
"""

from dataclasses import dataclass, field

import numpy as np

from .tdoa import octant_center_bearing


@dataclass
class PingerObservation:
    robot_position: np.ndarray   # xy, m world
    robot_yaw: float             # rad
    octant: int

    def __post_init__(self):
        self.robot_position = np.asarray(self.robot_position, dtype=float)[:2]

    @property
    def world_bearing(self):
        return (self.robot_yaw + octant_center_bearing(self.octant)) % (2 * np.pi)


@dataclass
class PingerPositionEstimate:
    position: np.ndarray | None  # xy, m world; None for direction-only
    residual: float              # rms perpendicular distance, m
    observation_count: int
    direction: float | None = None  # mean bearing when direction-only

    @property
    def direction_only(self):
        return self.position is None


def aggregate_pinger(observations, iterations=20000):
    """Least-squares ray intersection via gradient descent.

    Requires at least two observations from distinct positions. Rays within
    one degree of parallel carry no crossing information.
    """
    if len(observations) < 2:
        raise ValueError("need at least 2 observations")
    origins = np.array([o.robot_position for o in observations])
    bearings = np.array([o.world_bearing for o in observations])
    dirs = np.stack([np.cos(bearings), np.sin(bearings)], axis=1)

    def direction_only():
        mean_dir = np.arctan2(np.mean(np.sin(bearings)), np.mean(np.cos(bearings)))
        return PingerPositionEstimate(None, np.inf, len(observations),
                                      direction=float(mean_dir % (2 * np.pi)))

    # no baseline: every ray leaves the same point, nothing to intersect
    span = np.max(origins, axis=0) - np.min(origins, axis=0)
    if np.linalg.norm(span) < 1e-2:
        return direction_only()

    # parallel rays: compare directions as lines (mod pi)
    line_angles = bearings % np.pi
    spread = np.max(line_angles) - np.min(line_angles)
    spread = min(spread, np.pi - spread)
    if spread < np.deg2rad(1.0):
        return direction_only()

    normals = np.stack([-dirs[:, 1], dirs[:, 0]], axis=1)
    # F(x) = sum (n_i . (x - o_i))^2: quadratic, so constant-step descent at
    # 2/(trace) converges linearly; iterate until the update stalls
    A = normals.T @ normals
    step = 1.0 / float(np.trace(A))
    x = origins.mean(axis=0)
    for _ in range(iterations):
        r = np.einsum("ij,ij->i", normals, x[None, :] - origins)
        g = 2.0 * normals.T @ r
        x_new = x - step * g
        if np.linalg.norm(x_new - x) < 1e-10:
            x = x_new
            break
        x = x_new
    r = np.einsum("ij,ij->i", normals, x[None, :] - origins)
    residual = float(np.sqrt(np.mean(r * r)))
    return PingerPositionEstimate(x, residual, len(observations))
