"""Automated version of the bench checklist for state sanity.

Checks sensor publish rates (above 20 Hz, no long gaps), stationary
covariance trend, and direction-sign conventions (forward motion means
positive DVL x; counter-clockwise rotation means increasing yaw). The burst
publishing pressure sensor fails the gap check even when its mean rate looks
healthy, which is exactly the bug signature this checklist exists to catch.
"""

from dataclasses import dataclass, field

import numpy as np

from .. import quaternions as quat

RATE_THRESHOLD = 20.0   # Hz
MAX_GAP = 0.5           # s
MIN_HISTORY = 5.0       # s


@dataclass
class CheckResult:
    name: str
    status: str            # "pass" | "fail" | "inconclusive"
    evidence: str

    @property
    def ok(self):
        return self.status == "pass"


@dataclass
class DiagnosticsReport:
    checks: list

    @property
    def passed(self):
        return all(c.status != "fail" for c in self.checks)

    def by_name(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _rate_check(topic, arrivals):
    if len(arrivals) < 2:
        return CheckResult(f"rate/{topic}", "fail", "fewer than 2 samples")
    arrivals = np.asarray(arrivals)
    span = arrivals[-1] - arrivals[0]
    rate = (len(arrivals) - 1) / span if span > 0 else np.inf
    max_gap = float(np.max(np.diff(arrivals)))
    if rate < RATE_THRESHOLD:
        return CheckResult(f"rate/{topic}", "fail",
                           f"mean rate {rate:.1f} Hz below {RATE_THRESHOLD:.0f} Hz")
    if max_gap > MAX_GAP:
        return CheckResult(f"rate/{topic}", "fail",
                           f"max gap {max_gap:.2f} s (mean rate {rate:.1f} Hz)")
    return CheckResult(f"rate/{topic}", "pass",
                       f"mean rate {rate:.1f} Hz, max gap {max_gap * 1000:.0f} ms")


def run_diagnostics(arrivals_by_topic, states=None, forward_dvl_x=None,
                    ccw_yaw=None):
    """Evaluate the state checklist over recorded history.

    arrivals_by_topic: topic -> list of arrival times (s).
    states: optional stationary-period VehicleState list for the covariance
    trend check. forward_dvl_x: optional DVL x readings recorded while the
    vehicle was pushed forward. ccw_yaw: optional yaw series recorded during
    counter-clockwise rotation.
    """
    checks = []
    span = 0.0
    for arrivals in arrivals_by_topic.values():
        if arrivals:
            span = max(span, arrivals[-1] - arrivals[0])
    if span < MIN_HISTORY:
        return DiagnosticsReport([CheckResult(
            "history", "inconclusive",
            f"only {span:.1f} s of history, need {MIN_HISTORY:.0f} s")])

    for topic in sorted(arrivals_by_topic):
        checks.append(_rate_check(topic, arrivals_by_topic[topic]))

    if states is not None and len(states) >= 10:
        cov = np.array([s.covariance for s in states])
        t = np.array([s.stamp for s in states])
        slopes = [np.polyfit(t, cov[:, i], 1)[0] for i in range(cov.shape[1])]
        worst = float(np.max(slopes))
        status = "pass" if worst <= 1e-6 else "fail"
        checks.append(CheckResult("covariance_trend", status,
                                  f"worst slope {worst:.2e} per s"))

    if forward_dvl_x is not None:
        vals = np.asarray(forward_dvl_x)
        status = "pass" if np.mean(vals) > 0 else "fail"
        checks.append(CheckResult("dvl_forward_sign", status,
                                  f"mean forward velocity {np.mean(vals):+.3f} m/s"))

    if ccw_yaw is not None:
        yaw = np.unwrap(np.asarray(ccw_yaw))
        status = "pass" if yaw[-1] > yaw[0] else "fail"
        checks.append(CheckResult("yaw_ccw_sign", status,
                                  f"yaw change {np.degrees(yaw[-1] - yaw[0]):+.1f} deg"))

    return DiagnosticsReport(checks)
