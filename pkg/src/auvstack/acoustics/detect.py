"""Statistical ping onset detection.

Noise level alone doesn't transfer between pools and derivatives trip on
transients, so the detector measures background at the pinger frequency and
thresholds at k standard deviations above the mean local peak level. Timing
matters: the onset is refined to the threshold crossing, not the peak.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.signal


@dataclass
class ChannelDetection:
    onset: int | None          # sample index, None when nothing exceeded
    threshold: float
    mean_peak: float
    peak_std: float
    contaminated: bool = False  # reference window itself crossed threshold


@dataclass
class PingDetection:
    channels: list             # one ChannelDetection per channel

    @property
    def complete(self):
        return all(c.onset is not None and not c.contaminated
                   for c in self.channels)


def band_limit(samples, sample_rate, frequency, halfwidth=5000.0):
    """Fourth-order Butterworth bandpass around the pinger frequency.

    Causal, like the analog filter it stands in for: no pre-ring to trip the
    onset search early. Returns (filtered, group_delay_samples) so callers
    can compensate the filter's delay at the center frequency.
    """
    lo = max(frequency - halfwidth, 1.0)
    hi = min(frequency + halfwidth, 0.49 * sample_rate)
    sos = scipy.signal.butter(2, [lo, hi], btype="bandpass",
                              fs=sample_rate, output="sos")
    filtered = scipy.signal.sosfilt(sos, samples)
    b, a = scipy.signal.sos2tf(sos)
    _, gd = scipy.signal.group_delay((b, a), w=[frequency], fs=sample_rate)
    return filtered, float(gd[0])


def detect_ping(samples, sample_rate, frequency, k=4.5, band_halfwidth=5000.0,
                block_seconds=0.001, reference_fraction=0.2):
    """Find the onset of the first ping in a single channel.

    Local peak levels are block maxima of the band-limited magnitude
    (1 ms blocks by default). Background statistics come from a leading
    reference window; the threshold is mean_peak + k * peak_std with
    k in [4, 5]. Returns a ChannelDetection; onset None when nothing
    exceeds the threshold, contaminated flag set when the reference window
    itself does (detection deferred).
    """
    samples = np.asarray(samples, dtype=float)
    if len(samples) / sample_rate < 0.05:
        raise ValueError("buffer must cover at least 50 ms")
    if not 4.0 <= k <= 5.0:
        raise ValueError("k must lie in [4, 5]")

    band, group_delay = band_limit(samples, sample_rate, frequency,
                                   band_halfwidth)
    mag = np.abs(band)
    block = max(int(block_seconds * sample_rate), 1)
    n_blocks = len(mag) // block
    peaks = mag[:n_blocks * block].reshape(n_blocks, block).max(axis=1)

    ref_blocks = max(int(n_blocks * reference_fraction), 4)
    ref = peaks[:ref_blocks]
    mean_peak = float(np.mean(ref))
    peak_std = float(np.std(ref))
    threshold = mean_peak + k * peak_std

    # contamination guard: a burst inside the reference window inflates the
    # mean/std enough to mask itself from its own threshold, so check the
    # window against a robust (median/MAD) yardstick as well
    med = float(np.median(ref))
    mad = float(np.median(np.abs(ref - med)))
    robust_ceiling = med + 6.0 * 1.4826 * max(mad, 1e-12)
    if np.any(ref > threshold) or np.any(ref > robust_ceiling):
        return ChannelDetection(None, threshold, mean_peak, peak_std,
                                contaminated=True)

    # a real burst spans several blocks; a lone noise excursion does not.
    # requiring two consecutive blocks above threshold keeps the false
    # positive rate down without touching the threshold formula
    scan = peaks[ref_blocks:]
    above = (scan[:-1] > threshold) & (scan[1:] > threshold)
    hits = np.nonzero(above)[0]
    if len(hits) == 0:
        return ChannelDetection(None, threshold, mean_peak, peak_std)
    hit_block = ref_blocks + int(hits[0])

    # refine to the first magnitude sample at/above threshold, scanning from
    # one block before the hit so a burst straddling the boundary is caught.
    # a valid crossing must be sustained (bursts last milliseconds; noise
    # spikes near the burst do not), else skip to the next crossing
    start = max((hit_block - 1) * block, 0)
    stop = min((hit_block + 2) * block, len(mag))
    hold = max(block // 2, 8)
    onset = hit_block * block
    for c in np.nonzero(mag[start:stop] >= threshold)[0]:
        idx = start + int(c)
        ahead = mag[idx:idx + hold]
        if np.mean(ahead > 0.7 * threshold) >= 0.5:
            onset = idx
            break
    onset = max(onset - int(round(group_delay)), 0)
    return ChannelDetection(onset, threshold, mean_peak, peak_std)


def detect_all(capture, frequency, k=4.5, **kw):
    """Run detection on every channel of a capture."""
    return PingDetection([
        detect_ping(ch, capture.sample_rate, frequency, k=k, **kw)
        for ch in capture.channels])
