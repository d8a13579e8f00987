"""Effort-to-PWM conversion with the firmware-side ESC offset correction."""

import numpy as np

US_PER_COUNT = 3.125   # 400 us full scale over the int8 range


def effort_to_pwm(efforts, esc_profile):
    """Pulse widths to send so the hardware-received pulse equals nominal.

    Efforts snap to the int8/128 command grid (3.125 us per count); the
    nominal pulse is 1500 + 400 * effort, and each ESC's measured offset is
    added on top so that the pulse the ESC acts on lands at nominal.
    """
    efforts = np.asarray(efforts, dtype=float)
    if np.any(np.abs(efforts) > 1.0 + 1e-9):
        raise ValueError("efforts must lie in [-1, 1]")
    counts = np.clip(np.round(efforts * 128.0), -128, 127)
    nominal = 1500.0 + US_PER_COUNT * counts
    return nominal + esc_profile.offset_us


def deadband_pwm(n):
    """Neutral pulses: the kill-switch output."""
    return np.full(n, 1500.0)
