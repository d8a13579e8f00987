"""Pool world model: bounds, task objects, pinger, and water properties."""

from dataclasses import dataclass, field

import numpy as np

OBJECT_KINDS = {"gate", "buoy", "path_marker", "bin", "octagon", "wall_panel"}


@dataclass
class WorldObject:
    kind: str
    position: np.ndarray      # m, ENU world (object center)
    yaw: float = 0.0          # rad
    extent: np.ndarray = field(default_factory=lambda: np.array([1.0, 1.0, 1.0]))
    tag: str = ""             # e.g. "hot"/"cold" for bin halves and gate sides

    def __post_init__(self):
        if self.kind not in OBJECT_KINDS:
            raise ValueError(f"unknown object kind {self.kind!r}")
        self.position = np.asarray(self.position, dtype=float)
        self.extent = np.asarray(self.extent, dtype=float)


@dataclass
class PingerSpec:
    position: np.ndarray
    frequency: float = 40000.0     # Hz, matches the bench pinger's band
    ping_interval: float = 0.5     # s
    ping_duration: float = 0.004   # s

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        if self.frequency <= 0:
            raise ValueError("pinger frequency must be positive")


@dataclass
class WaterProperties:
    density: float = 1000.0        # kg/m^3
    sound_speed: float = 1500.0    # m/s

    def __post_init__(self):
        if self.sound_speed <= 0:
            raise ValueError("sound_speed must be positive")


@dataclass
class WorldModel:
    bounds_min: np.ndarray
    bounds_max: np.ndarray
    objects: list
    pinger: PingerSpec | None = None
    water: WaterProperties = field(default_factory=WaterProperties)

    def __post_init__(self):
        self.bounds_min = np.asarray(self.bounds_min, dtype=float)
        self.bounds_max = np.asarray(self.bounds_max, dtype=float)
        for obj in self.objects:
            if not self.contains(obj.position):
                raise ValueError(f"{obj.kind} at {obj.position} outside pool bounds")
        if self.pinger is not None and not self.contains(self.pinger.position):
            raise ValueError("pinger outside pool bounds")

    def contains(self, point):
        point = np.asarray(point, dtype=float)
        return bool(np.all(point >= self.bounds_min - 1e-9)
                    and np.all(point <= self.bounds_max + 1e-9))

    def of_kind(self, kind, tag=None):
        return [o for o in self.objects
                if o.kind == kind and (tag is None or o.tag == tag)]

    def first_of_kind(self, kind, tag=None):
        matches = self.of_kind(kind, tag)
        return matches[0] if matches else None


def default_world():
    """Competition-style pool used when a scenario file gives no world."""
    objects = [
        WorldObject("gate", [10.0, 4.0, -1.5], yaw=0.0,
                    extent=np.array([3.0, 0.15, 1.5]), tag="hot_left"),
        WorldObject("path_marker", [11.5, 4.6, -3.9], yaw=np.deg2rad(35),
                    extent=np.array([1.2, 0.3, 0.05])),
        WorldObject("buoy", [14.0, 7.0, -2.0], yaw=0.0,
                    extent=np.array([0.3, 0.3, 0.3])),
        WorldObject("path_marker", [15.0, 8.2, -3.9], yaw=np.deg2rad(50),
                    extent=np.array([1.2, 0.3, 0.05])),
        WorldObject("bin", [16.6, 10.4, -3.95], yaw=0.0,
                    extent=np.array([0.6, 0.6, 0.1]), tag="hot"),
        WorldObject("bin", [16.6, 11.1, -3.95], yaw=0.0,
                    extent=np.array([0.6, 0.6, 0.1]), tag="cold"),
        WorldObject("octagon", [21.0, 15.0, 0.0], yaw=0.0,
                    extent=np.array([1.35, 1.35, 0.2])),
        WorldObject("wall_panel", [24.9, 10.0, -2.0], yaw=np.deg2rad(90),
                    extent=np.array([8.0, 0.1, 3.0])),
    ]
    return WorldModel(
        bounds_min=np.array([0.0, 0.0, -4.0]),
        bounds_max=np.array([25.0, 20.0, 0.0]),
        objects=objects,
        pinger=PingerSpec(position=np.array([21.0, 15.0, -3.8])),
    )
