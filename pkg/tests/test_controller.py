import numpy as np
import pytest

from auvstack import quaternions as quat
from auvstack.control import (Controller, ControllerConfig, DEFAULT_GAINS,
                              PidGains, Setpoint, load_gains, save_gains)
from auvstack.estimation import VehicleState
from auvstack.plant import EscDefectProfile, default_thruster_layout


def fresh_state(stamp=0.0, position=(0.0, 0.0, 0.0)):
    return VehicleState(np.asarray(position, float), quat.IDENTITY,
                        np.zeros(3), np.zeros(3), np.zeros(6), stamp)


def make_controller(**kw):
    layout = default_thruster_layout()
    esc = EscDefectProfile.uniform(layout.count)
    return Controller(layout, esc, **kw)


def test_gains_persistence_round_trip(tmp_path):
    path = tmp_path / "gains.toml"
    gains = {a: PidGains(kp=i + 0.5, ki=0.125 * i, kd=0.25, integral_clamp=0.7,
                         derivative_cutoff=8.0)
             for i, a in enumerate(("x", "y", "z", "roll", "pitch", "yaw"))}
    save_gains(gains, path)
    loaded = load_gains(path)
    for axis, g in gains.items():
        assert vars(loaded[axis]) == vars(g)


def test_controller_reloads_persisted_gains(tmp_path):
    path = tmp_path / "gains.toml"
    c1 = make_controller(gains_path=path)
    c1.update_gains("z", PidGains(kp=9.0, ki=0.1, kd=0.2))
    c2 = make_controller(gains_path=path)
    assert c2.current_gains("z").kp == 9.0


def test_doubling_kp_doubles_proportional_term():
    ctrl = make_controller(gains={a: PidGains(kp=1.0) for a in
                                  ("x", "y", "z", "roll", "pitch", "yaw")},
                           cfg=ControllerConfig(buoyancy_force=0.0))
    sp = Setpoint.position(x=0.3)
    r1 = ctrl.tick(fresh_state(0.0), sp, now=0.0)
    ctrl.update_gains("x", PidGains(kp=2.0))
    r2 = ctrl.tick(fresh_state(0.01), sp, now=0.01)
    assert r2.axis_efforts[0] == pytest.approx(2.0 * r1.axis_efforts[0])


def test_stale_state_holds_last_output():
    ctrl = make_controller()
    sp = Setpoint.position(x=1.0)
    r1 = ctrl.tick(fresh_state(0.0), sp, now=0.0)
    r2 = ctrl.tick(fresh_state(0.0), sp, now=5.0)  # 5 s old
    assert r2.held
    assert np.array_equal(r2.pwm_us, r1.pwm_us)


def test_disarm_forces_deadband_next_tick():
    ctrl = make_controller()
    sp = Setpoint.position(x=5.0, z=-2.0)
    r1 = ctrl.tick(fresh_state(0.0), sp, now=0.0)
    assert np.any(r1.pwm_us != 1500.0)
    ctrl.set_armed(False)
    r2 = ctrl.tick(fresh_state(0.01), sp, now=0.01)
    assert np.all(r2.pwm_us == 1500.0)
    assert not r2.armed


def test_power_mode_passthrough_drives_surge():
    ctrl = make_controller(cfg=ControllerConfig(buoyancy_force=0.0))
    sp = Setpoint.power(x=0.3)
    r = ctrl.tick(fresh_state(0.0), sp, now=0.0)
    # horizontal thrusters (indices 4..7) all push forward
    assert np.all(r.thruster_efforts[4:] > 0.0)
    assert np.allclose(r.thruster_efforts[:4], 0.0, atol=1e-9)


def test_invalid_gains_rejected_previous_retained():
    ctrl = make_controller()
    before = ctrl.current_gains("yaw").kp
    with pytest.raises(ValueError):
        ctrl.update_gains("yaw", PidGains(kp=1.0, derivative_cutoff=500.0))
    assert ctrl.current_gains("yaw").kp == before


def test_tick_duration_measured():
    ctrl = make_controller()
    r = ctrl.tick(fresh_state(0.0), Setpoint.position(z=-1.0), now=0.0)
    assert 0.0 < r.duration < 0.01
