"""Primary-object detection and long-range gate/buoy classification with
acoustic-reflection rejection."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class SonarClassifierConfig:
    """Classification bands and reflection-similarity bounds.

    All values are calibrated against the scan synthesizer and the contour
    perimeter estimator, and belong together: the buoy circularity floor
    tolerates the front-face curvature staircase a near buoy paints, and the
    reflection circularity delta tolerates discretization jitter on blobs a
    dozen cells small.
    """

    buoy_area_band: tuple = (0.02, 0.45)     # m^2
    gate_area_band: tuple = (0.45, 2.0)      # m^2
    buoy_min_circularity: float = 0.60
    gate_max_circularity: float = 0.40
    reflection_count_ratio: float = 0.35     # |count ratio - 1| bound
    reflection_circ_delta: float = 0.15      # image-circularity difference
    containment_slack: float = 0.01          # rad, bearing-interval slack


@dataclass
class SonarDetection:
    kind: str                 # "gate" | "buoy" | "unknown" | "none"
    position: np.ndarray | None   # m, sensor frame
    normal_angle: float | None    # rad, for primary detections
    is_reflection: bool = False
    cluster: object = None

    @property
    def found(self):
        return self.kind != "none"


def detect_primary(clusters):
    """Pick the biggest cluster as the tracked object and report its
    intensity-weighted center plus the normal angle, oriented back at the
    sensor. Returns a none-detection when the target is missing."""
    if not clusters:
        return SonarDetection("none", None, None)
    best = max(clusters, key=lambda c: c.area)
    normal = np.array([-best.principal_axis[1], best.principal_axis[0]])
    if normal @ best.centroid > 0:
        normal = -normal  # point from the panel toward the sensor
    return SonarDetection("unknown", best.centroid.copy(),
                          float(np.arctan2(normal[1], normal[0])),
                          cluster=best)


def _angular_overlap(a, b):
    lo = max(a.bearing_interval[0], b.bearing_interval[0])
    hi = min(a.bearing_interval[1], b.bearing_interval[1])
    return hi >= lo


def mark_reflections(clusters, cfg: SonarClassifierConfig = None):
    """Flag clusters that are acoustic echoes of a nearer cluster.

    Two triggers, both requiring strictly greater range than the nearer
    cluster. First, occlusion: a cluster whose bearing interval lies inside
    a nearer cluster's wedge cannot be a direct return (the sonar sees first
    hits only), so it is an echo no matter its shape. Second, for partial
    overlaps, image-footprint similarity: a reflection repeats the nearer
    object's pixel count and image-space circularity. Returns
    (kept, reflections)."""
    cfg = cfg or SonarClassifierConfig()
    reflections = set()
    ordered = sorted(range(len(clusters)), key=lambda i: clusters[i].range_m)
    for ai in range(len(ordered)):
        a = clusters[ordered[ai]]
        if ordered[ai] in reflections:
            continue
        for bi in range(ai + 1, len(ordered)):
            b = clusters[ordered[bi]]
            if ordered[bi] in reflections:
                continue
            if b.range_m <= a.range_m:
                continue
            if not _angular_overlap(a, b):
                continue
            contained = (b.bearing_interval[0] >= a.bearing_interval[0] - cfg.containment_slack
                         and b.bearing_interval[1] <= a.bearing_interval[1] + cfg.containment_slack)
            ratio = b.cell_count / max(a.cell_count, 1)
            similar = (abs(ratio - 1.0) <= cfg.reflection_count_ratio
                       and abs(b.image_circularity - a.image_circularity)
                       <= cfg.reflection_circ_delta)
            if contained or similar:
                reflections.add(ordered[bi])
    kept = [c for i, c in enumerate(clusters) if i not in reflections]
    flagged = [c for i, c in enumerate(clusters) if i in reflections]
    return kept, flagged


def classify_long_range(clusters, cfg: SonarClassifierConfig = None):
    """Reflection pass first, then area/circularity classification into
    gate, buoy, and unknown."""
    cfg = cfg or SonarClassifierConfig()
    kept, flagged = mark_reflections(clusters, cfg)
    detections = []
    for c in kept:
        if (c.circularity >= cfg.buoy_min_circularity
                and cfg.buoy_area_band[0] <= c.area <= cfg.buoy_area_band[1]):
            kind = "buoy"
        elif (c.circularity <= cfg.gate_max_circularity
                and cfg.gate_area_band[0] <= c.area <= cfg.gate_area_band[1]):
            kind = "gate"
        else:
            kind = "unknown"
        normal = np.array([-c.principal_axis[1], c.principal_axis[0]])
        if normal @ c.centroid > 0:
            normal = -normal
        detections.append(SonarDetection(
            kind, c.centroid.copy(), float(np.arctan2(normal[1], normal[0])),
            cluster=c))
    for c in flagged:
        detections.append(SonarDetection("unknown", c.centroid.copy(), None,
                                         is_reflection=True, cluster=c))
    return detections
