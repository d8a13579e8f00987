"""Raster geometry shared by the sonar cluster and vision blob pipelines:
connected components, Moore-neighbor contour tracing, perimeter estimation
with diagonal weighting, and second-moment shape analysis."""

import numpy as np
import scipy.ndimage

EIGHT_CONNECTED = np.ones((3, 3), dtype=int)

# clockwise Moore neighborhood starting from west
_MOORE = [(0, -1), (-1, -1), (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1)]


def label_components(grid, connectivity=8):
    """Label connected components of a boolean grid; background is 0."""
    structure = EIGHT_CONNECTED if connectivity == 8 else None
    labels, count = scipy.ndimage.label(grid, structure=structure)
    return labels, count


def moore_contour(grid):
    """Ordered outer boundary of the grid's single foreground component.

    Moore-neighbor tracing starting from the first foreground cell in scan
    order, terminating when the walk is about to repeat its first transition
    (start cell to second cell). Returns a list of (row, col) cells; a
    single isolated cell yields a one-element contour. Thin spurs appear
    twice, once per side, which is what a boundary-length estimate wants.
    """
    rows, cols = np.nonzero(grid)
    if len(rows) == 0:
        return []
    start = (int(rows[0]), int(cols[0]))
    if len(rows) == 1:
        return [start]

    h, w = grid.shape

    def occupied(cell):
        r, c = cell
        return 0 <= r < h and 0 <= c < w and grid[r, c]

    contour = [start]
    current = start
    entry_dir = 0  # scan order guarantees the west neighbor is background
    first_move = None
    for _ in range(4 * h * w + 8):
        nxt = None
        for k in range(8):
            d = (entry_dir + 1 + k) % 8
            cand = (current[0] + _MOORE[d][0], current[1] + _MOORE[d][1])
            if occupied(cand):
                nxt = (cand, d)
                break
        if nxt is None:
            return contour  # no neighbors: isolated cell
        cand, d = nxt
        if first_move is None:
            first_move = (current, cand)
        elif (current, cand) == first_move:
            break
        contour.append(cand)
        current = cand
        entry_dir = (d + 4) % 8  # re-enter from the cell we came from
    if len(contour) > 1 and contour[-1] == contour[0]:
        contour.pop()
    return contour


def contour_perimeter(contour, step_r=1.0, step_c=1.0):
    """Physical length of a closed contour chain.

    Straight moves cost one cell edge along their axis; diagonal moves cost
    the cell diagonal. One- and two-cell blobs fall back to their bounding
    rectangle perimeter (a chain through centers has no length to measure).
    """
    n = len(contour)
    if n == 0:
        return 0.0
    if n <= 2:
        rows = [c[0] for c in contour]
        cols = [c[1] for c in contour]
        height = (max(rows) - min(rows) + 1) * step_r
        width = (max(cols) - min(cols) + 1) * step_c
        return 2.0 * (height + width)
    total = 0.0
    diag = float(np.hypot(step_r, step_c))
    for i in range(n):
        r0, c0 = contour[i]
        r1, c1 = contour[(i + 1) % n]
        dr, dc = abs(r1 - r0), abs(c1 - c0)
        if dr and dc:
            total += diag
        elif dr:
            total += step_r
        else:
            total += step_c
    return total


def second_moments(points, weights=None):
    """Covariance eigen-decomposition of weighted 2D points.

    Returns (centroid, principal_axis, eigenvalues) with the principal axis
    the unit eigenvector of the larger eigenvalue.
    """
    pts = np.asarray(points, dtype=float)
    w = np.ones(len(pts)) if weights is None else np.asarray(weights, dtype=float)
    w = w / np.sum(w)
    centroid = w @ pts
    d = pts - centroid
    cov = (d * w[:, None]).T @ d
    vals, vecs = np.linalg.eigh(cov)
    axis = vecs[:, -1]
    if axis[0] < 0 or (axis[0] == 0 and axis[1] < 0):
        axis = -axis  # deterministic sign
    return centroid, axis, vals[::-1]
