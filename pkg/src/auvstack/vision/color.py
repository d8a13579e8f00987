"""HSV color filtering: the non-learned detection path.

Monochromatic targets (red buoy, orange path markers) don't need a neural
network; masking pixels near the target color in HSV space and classifying
the resulting contours is cheaper and very reliable in practice.
"""

from dataclasses import dataclass, field

import numpy as np


def rgb_to_hsv(rgb):
    """Vectorized hexcone conversion. rgb: (..., 3) in 0..255.

    Returns (h, s, v): hue in degrees [0, 360) with gray pixels reported as
    hue 0 by convention, saturation and value in [0, 1].
    """
    arr = np.asarray(rgb, dtype=float) / 255.0
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    v = np.max(arr, axis=-1)
    c = v - np.min(arr, axis=-1)
    s = np.where(v > 0, c / np.where(v > 0, v, 1.0), 0.0)

    with np.errstate(divide="ignore", invalid="ignore"):
        hr = np.where(c > 0, ((g - b) / c) % 6.0, 0.0)
        hg = np.where(c > 0, (b - r) / c + 2.0, 0.0)
        hb = np.where(c > 0, (r - g) / c + 4.0, 0.0)
    h = np.where(v == r, hr, np.where(v == g, hg, hb))
    h = np.where(c > 0, h * 60.0, 0.0) % 360.0
    return h, s, v


@dataclass
class HsvRange:
    hue_center: float          # degrees
    hue_tolerance: float       # degrees, wrap-aware
    saturation_min: float = 0.3
    value_min: float = 0.2

    def __post_init__(self):
        if not 0.0 < self.hue_tolerance <= 180.0:
            raise ValueError("hue tolerance must lie in (0, 180]")


def mask(image, hsv_range: HsvRange):
    """Binary mask of pixels close to the target color in HSV space."""
    h, s, v = rgb_to_hsv(image)
    dh = np.abs((h - hsv_range.hue_center + 180.0) % 360.0 - 180.0)
    return ((dh <= hsv_range.hue_tolerance)
            & (s >= hsv_range.saturation_min)
            & (v >= hsv_range.value_min))
