"""TDOA features and octant classification.

The three pairwise timing offsets of a 3-element array are rank-2: tau23 is
always tau13 - tau12, so the feature keeps only (tau12, tau13). Bearing is
recovered by gradient descent on the squared mismatch against a plane-wave
delay model, restarted once per 45-degree octant.
"""

from dataclasses import dataclass, field

import numpy as np


class FeatureRejected(ValueError):
    """Onsets cannot belong to the same ping interval."""


@dataclass
class TdoaFeature:
    tau12: float               # s
    tau13: float               # s

    @property
    def tau23(self):
        # constructional identity of the rank-2 reduction
        return self.tau13 - self.tau12


@dataclass
class OctantEstimate:
    octant: int                # 0..7, each spanning 45 degrees of bearing
    bearing: float             # rad, [0, 2pi)
    confidence: float          # [0, 1]; 0 flags an untrustworthy residual
    residual: float            # rms delay mismatch, s


def extract_tdoa(detection, sample_rate, array, sound_speed=1500.0):
    """Feature from per-channel onsets; rejects cross-interval pairings.

    tau12 = (onset1 - onset2) / rate, tau13 likewise. Any implied pairwise
    delay beyond the element spacing over sound speed (plus two samples of
    quantization slack) cannot come from a single wavefront.
    """
    onsets = [c.onset for c in detection.channels]
    if any(o is None for o in onsets):
        raise FeatureRejected("missing onsets")
    tau12 = (onsets[0] - onsets[1]) / sample_rate
    tau13 = (onsets[0] - onsets[2]) / sample_rate
    feature = TdoaFeature(tau12, tau13)
    bound = array.max_spacing / sound_speed + 2.0 / sample_rate
    for tau in (feature.tau12, feature.tau13, feature.tau23):
        if abs(tau) > bound:
            raise FeatureRejected(f"delay {tau * 1e6:.1f} us exceeds "
                                  f"{bound * 1e6:.1f} us bound")
    return feature


def predict_delays(bearing, array, sound_speed=1500.0):
    """Plane-wave (tau12, tau13) for a far source at the given xy bearing.

    Arrival time at element p is -(p . u)/c with u pointing at the source,
    so tau1j = ((p_j - p_1) . u) / c. Far-field holds because the element
    spacing is tiny against pinger range.
    """
    u = np.array([np.cos(bearing), np.sin(bearing)])
    p = array.elements[:, :2]
    tau12 = float((p[1] - p[0]) @ u) / sound_speed
    tau13 = float((p[2] - p[0]) @ u) / sound_speed
    return tau12, tau13


def classify_octant(feature, array, sound_speed=1500.0, restarts=8,
                    iterations=80, confidence_scale=None):
    """Bearing by gradient descent on squared delay mismatch, then octant.

    One restart per octant center; ties at octant boundaries break toward
    the lower index. Confidence decays with the rms residual; residuals
    beyond three sample periods flag the estimate with confidence 0.
    """
    p = array.elements[:, :2]
    d12 = (p[1] - p[0]) / sound_speed
    d13 = (p[2] - p[0]) / sound_speed
    t12, t13 = feature.tau12, feature.tau13

    # onset jitter is i.i.d. per channel but both delays share channel 1,
    # so their errors are correlated with covariance prop. to [[2,1],[1,2]];
    # whitening the residual accordingly is what makes noisy octants stick
    w11, w12, w22 = 2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0

    def objective(theta):
        u = np.array([np.cos(theta), np.sin(theta)])
        r12 = d12 @ u - t12
        r13 = d13 @ u - t13
        return w11 * r12 * r12 + 2.0 * w12 * r12 * r13 + w22 * r13 * r13

    def gradient(theta):
        u = np.array([np.cos(theta), np.sin(theta)])
        du = np.array([-np.sin(theta), np.cos(theta)])
        r12 = d12 @ u - t12
        r13 = d13 @ u - t13
        g12 = d12 @ du
        g13 = d13 @ du
        return 2.0 * (w11 * r12 * g12 + w12 * (r12 * g13 + r13 * g12)
                      + w22 * r13 * g13)

    # delays are of order spacing/c; scale the step so updates are O(radian)
    scale = (np.linalg.norm(d12) ** 2 + np.linalg.norm(d13) ** 2)
    best_theta, best_j = 0.0, np.inf
    for r in range(restarts):
        theta = (r + 0.5) * (2.0 * np.pi / restarts)
        step = 0.5 / scale
        j = objective(theta)
        for _ in range(iterations):
            g = gradient(theta)
            cand = theta - step * g
            jc = objective(cand)
            if jc < j:
                theta, j = cand, jc
                step *= 1.2
            else:
                step *= 0.5
                if step * max(abs(g), 1e-300) < 1e-12:
                    break
        if j < best_j:
            best_theta, best_j = theta % (2.0 * np.pi), j

    octant = _octant_of(best_theta)
    residual = float(np.sqrt(best_j / 2.0))
    if confidence_scale is None:
        confidence_scale = 1.0 / array.sample_rate
    if residual > 3.0 * confidence_scale:
        confidence = 0.0
    else:
        confidence = float(np.exp(-residual / confidence_scale))
    return OctantEstimate(octant, best_theta, confidence, residual)


def _octant_of(bearing, boundary_eps=1e-4):
    """Bin a bearing into its 45-degree octant; exact boundaries (within a
    numerical snap) break toward the lower octant index, deterministically."""
    frac = (bearing % (2.0 * np.pi)) / (np.pi / 4.0)
    near = round(frac)
    if abs(frac - near) < boundary_eps:
        return int(near) - 1 if near >= 1 else 0
    return int(frac) % 8


def octant_center_bearing(octant):
    return (octant + 0.5) * (np.pi / 4.0)
