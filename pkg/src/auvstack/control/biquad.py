"""Second-order Butterworth low-pass used to smooth PID derivatives."""

import numpy as np


def butterworth_coefficients(cutoff, sample_rate):
    """Biquad coefficients (b, a) for a second-order Butterworth low-pass.

    Bilinear transform with prewarping; DC gain is exactly 1 by construction
    (sum of b equals 1 + sum of a). Returns b = (b0, b1, b2) and feedback
    a = (a1, a2), a0 normalized to 1.
    """
    if not 0.0 < cutoff < sample_rate / 2.0:
        raise ValueError(f"cutoff must be in (0, {sample_rate / 2}), got {cutoff}")
    c = 1.0 / np.tan(np.pi * cutoff / sample_rate)
    norm = 1.0 / (1.0 + np.sqrt(2.0) * c + c * c)
    b = (norm, 2.0 * norm, norm)
    a = (2.0 * norm * (1.0 - c * c), norm * (1.0 - np.sqrt(2.0) * c + c * c))
    return b, a


class Biquad:
    """Direct-form II transposed biquad: two delayed state samples."""

    def __init__(self, b, a):
        self.b0, self.b1, self.b2 = b
        self.a1, self.a2 = a
        self.s1 = 0.0
        self.s2 = 0.0

    @classmethod
    def lowpass(cls, cutoff, sample_rate):
        return cls(*butterworth_coefficients(cutoff, sample_rate))

    def reset(self):
        self.s1 = 0.0
        self.s2 = 0.0

    def prime(self, x):
        """Set the state as if input x had been held forever (output = x)."""
        self.s1 = (1.0 - self.b0) * x
        self.s2 = (self.b2 - self.a2) * x

    def step(self, x):
        y = self.b0 * x + self.s1
        self.s1 = self.b1 * x - self.a1 * y + self.s2
        self.s2 = self.b2 * x - self.a2 * y
        return y
