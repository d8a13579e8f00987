"""Density clustering of sonar returns and per-cluster shape summaries."""

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ..rasterops import contour_perimeter, label_components, moore_contour, second_moments

NOISE = -1


def dbscan(xy, eps, min_pts):
    """Standard DBSCAN over 2D points; labels in first-member-index order.

    Core points have at least min_pts neighbors (self included) within eps;
    clusters are the density-connected components; everything else is labeled
    NOISE (-1). Expansion is breadth-first in index order, so the output is
    deterministic for a given input ordering.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if min_pts < 1:
        raise ValueError("min_pts must be at least 1")
    xy = np.asarray(xy, dtype=float)
    n = len(xy)
    labels = np.full(n, NOISE, dtype=int)
    if n == 0:
        return labels
    tree = cKDTree(xy)
    neighborhoods = tree.query_ball_point(xy, eps)
    core = np.array([len(nb) >= min_pts for nb in neighborhoods])

    cluster = 0
    for seed in range(n):
        if labels[seed] != NOISE or not core[seed]:
            continue
        labels[seed] = cluster
        frontier = [seed]
        while frontier:
            nxt = []
            for i in frontier:
                for j in sorted(neighborhoods[i]):
                    if labels[j] == NOISE:
                        labels[j] = cluster
                        if core[j]:
                            nxt.append(j)
            frontier = nxt
        cluster += 1
    return labels


@dataclass
class Cluster:
    indices: np.ndarray         # member indices into the source point set
    xy: np.ndarray              # (m, 2) sensor-frame coordinates
    intensity: np.ndarray
    cell_count: int             # raw member count (image-space size)
    area: float                 # m^2: sum of per-cell physical areas
    perimeter: float            # m, boundary estimate
    circularity: float          # 4 pi A / P^2, clipped to 1.1
    image_circularity: float    # same metric on the index raster
    centroid: np.ndarray        # intensity-weighted, sensor frame
    principal_axis: np.ndarray  # unit vector, sensor frame
    elongation: float           # sqrt of eigenvalue ratio (major/minor)
    range_m: float              # centroid distance from the sensor
    bearing_interval: tuple     # (min, max) bearing of members, rad


def _circularity(area, perimeter):
    if perimeter <= 0:
        return 1.0
    return float(min(4.0 * np.pi * area / perimeter ** 2, 1.1))


def _raster_metrics(raster_idx, step_r, step_c):
    """Perimeter of the member cells on their raster; multi-component
    rasters (possible after thresholding) sum their outer contours."""
    rows = raster_idx[:, 0] - raster_idx[:, 0].min()
    cols = raster_idx[:, 1] - raster_idx[:, 1].min()
    grid = np.zeros((rows.max() + 1, cols.max() + 1), dtype=bool)
    grid[rows, cols] = True
    labels, count = label_components(grid)
    total = 0.0
    for k in range(1, count + 1):
        total += contour_perimeter(moore_contour(labels == k), step_r, step_c)
    return total


def summarize_cluster(points, member_idx):
    """Build a Cluster record from a CartesianPointSet and member indices.

    Area sums each member cell's physical footprint (r * dtheta * dr, exact
    for the polar raster); the shape contour walks the native bearing-range
    raster. Circularity is reported both with physical cell dimensions (for
    classification) and in raw index space (for reflection matching, since a
    reflection repeats the image footprint, not the physical one).
    """
    member_idx = np.asarray(member_idx, dtype=int)
    xy = points.xy[member_idx]
    intensity = points.intensity[member_idx]
    polar = points.polar_idx[member_idx]
    ranges = np.linalg.norm(xy, axis=1)
    mean_range = float(np.mean(ranges))

    if points.uniform_cell_area is not None:
        area = points.uniform_cell_area * len(member_idx)
    else:
        area = float(np.sum(ranges * points.bearing_step * points.bin_length))
    if points.raster_steps is not None:
        step_r, step_c = points.raster_steps
    else:
        step_c = points.bin_length                  # range direction
        step_r = mean_range * points.bearing_step   # arc direction
    perimeter = _raster_metrics(polar, step_r, step_c)
    image_perimeter = _raster_metrics(polar, 1.0, 1.0)

    centroid, axis, eigvals = second_moments(xy, weights=intensity)
    minor = max(float(eigvals[1]), 1e-12)
    elongation = float(np.sqrt(eigvals[0] / minor))
    bearings = np.arctan2(xy[:, 1], xy[:, 0])

    return Cluster(
        indices=member_idx,
        xy=xy,
        intensity=intensity,
        cell_count=len(member_idx),
        area=area,
        perimeter=perimeter,
        circularity=_circularity(area, perimeter),
        image_circularity=_circularity(float(len(member_idx)), image_perimeter),
        centroid=centroid,
        principal_axis=axis,
        elongation=elongation,
        range_m=mean_range,
        bearing_interval=(float(np.min(bearings)), float(np.max(bearings))),
    )


def cluster_points(points, eps, min_pts):
    """DBSCAN then summarize, ordered by first member index."""
    labels = dbscan(points.xy, eps, min_pts)
    clusters = []
    for k in range(labels.max() + 1 if len(labels) else 0):
        clusters.append(summarize_cluster(points, np.nonzero(labels == k)[0]))
    return clusters
