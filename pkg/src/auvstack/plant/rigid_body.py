"""6-DOF rigid body with quadratic drag, stepped by semi-implicit Euler.

The plant exists to exercise the controls stack, not to model hydrodynamics:
added mass and currents are omitted and drag is diagonal quadratic. Buoyancy
acts through the center of mass (no righting moment by default).
"""

from dataclasses import dataclass, field

import numpy as np

from .. import quaternions as quat

GRAVITY = 9.81


@dataclass
class RigidBody:
    position: np.ndarray          # m, ENU world
    orientation: np.ndarray       # unit quaternion, body -> world
    linear_velocity: np.ndarray   # m/s, body frame
    angular_velocity: np.ndarray  # rad/s, body frame
    mass: float                   # kg
    inertia_diagonal: np.ndarray  # kg m^2
    buoyancy_force: float         # N, world +z
    drag_coefficients: np.ndarray # 6 quadratic coefficients (3 linear, 3 angular)

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        self.orientation = np.asarray(self.orientation, dtype=float)
        self.linear_velocity = np.asarray(self.linear_velocity, dtype=float)
        self.angular_velocity = np.asarray(self.angular_velocity, dtype=float)
        self.inertia_diagonal = np.asarray(self.inertia_diagonal, dtype=float)
        self.drag_coefficients = np.asarray(self.drag_coefficients, dtype=float)
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if np.any(self.inertia_diagonal <= 0):
            raise ValueError("inertia entries must be positive")
        if abs(np.linalg.norm(self.orientation) - 1.0) > 1e-9:
            raise ValueError("orientation must be unit-norm")

    def copy(self):
        return RigidBody(
            self.position.copy(), self.orientation.copy(),
            self.linear_velocity.copy(), self.angular_velocity.copy(),
            self.mass, self.inertia_diagonal.copy(), self.buoyancy_force,
            self.drag_coefficients.copy(),
        )

    @property
    def depth(self):
        """Positive below the surface (surface at z = 0)."""
        return max(0.0, -self.position[2])

    def kinetic_energy(self):
        v, w = self.linear_velocity, self.angular_velocity
        return 0.5 * self.mass * v @ v + 0.5 * w @ (self.inertia_diagonal * w)


def neutral_body(mass=30.0, position=(0.0, 0.0, -1.0)):
    """Neutrally buoyant body with desk-scale defaults."""
    return RigidBody(
        position=np.asarray(position, dtype=float),
        orientation=quat.IDENTITY.copy(),
        linear_velocity=np.zeros(3),
        angular_velocity=np.zeros(3),
        mass=mass,
        inertia_diagonal=np.array([1.5, 2.0, 2.2]),
        buoyancy_force=mass * GRAVITY,
        drag_coefficients=np.array([25.0, 30.0, 35.0, 3.0, 4.0, 4.0]),
    )


def step_dynamics(body, thrust_forces, layout, dt):
    """Advance the body one step under thruster forces (per-thruster newtons).

    Semi-implicit Euler on the Newton-Euler equations in the body frame:
    velocities first, then pose from the updated velocities. The quaternion is
    renormalized every step. Scalar math throughout: this runs every control
    tick and numpy's per-call overhead dominates at 3-vector sizes.
    """
    if not (0.0 < dt <= 0.1):
        raise ValueError(f"dt must be in (0, 0.1], got {dt}")
    thrust_forces = np.asarray(thrust_forces, dtype=float)
    if not np.all(np.isfinite(thrust_forces)):
        raise ValueError("non-finite thrust forces")
    if np.any(np.abs(thrust_forces) > layout.max_thrust * (1 + 1e-9)):
        raise ValueError("thrust exceeds max_thrust")

    vx, vy, vz = body.linear_velocity.tolist()
    wx, wy, wz = body.angular_velocity.tolist()
    qw, qx, qy, qz = body.orientation.tolist()
    ix, iy, iz = body.inertia_diagonal.tolist()
    c0, c1, c2, c3, c4, c5 = body.drag_coefficients.tolist()
    m = body.mass

    fx, fy, fz = (layout.directions.T @ thrust_forces).tolist()
    tx, ty, tz = (layout.torque_arms.T @ thrust_forces).tolist()

    # buoyancy minus gravity along world +z, expressed in the body frame:
    # R^T (0,0,g) = g * third row of R
    g_net = body.buoyancy_force - m * GRAVITY
    fx += g_net * 2.0 * (qx * qz - qw * qy) - c0 * abs(vx) * vx
    fy += g_net * 2.0 * (qy * qz + qw * qx) - c1 * abs(vy) * vy
    fz += g_net * (1.0 - 2.0 * (qx * qx + qy * qy)) - c2 * abs(vz) * vz
    tx -= c3 * abs(wx) * wx
    ty -= c4 * abs(wy) * wy
    tz -= c5 * abs(wz) * wz

    # v_dot = F/m - w x v ; w_dot = (tau - w x Iw) / I, all from the old state
    nvx = vx + dt * (fx / m - (wy * vz - wz * vy))
    nvy = vy + dt * (fy / m - (wz * vx - wx * vz))
    nvz = vz + dt * (fz / m - (wx * vy - wy * vx))
    nwx = wx + dt * (tx - (wy * iz * wz - wz * iy * wy)) / ix
    nwy = wy + dt * (ty - (wz * ix * wx - wx * iz * wz)) / iy
    nwz = wz + dt * (tz - (wx * iy * wy - wy * ix * wx)) / iz

    # position advances with the updated body velocity rotated to world
    r00 = 1.0 - 2.0 * (qy * qy + qz * qz)
    r01 = 2.0 * (qx * qy - qw * qz)
    r02 = 2.0 * (qx * qz + qw * qy)
    r10 = 2.0 * (qx * qy + qw * qz)
    r11 = 1.0 - 2.0 * (qx * qx + qz * qz)
    r12 = 2.0 * (qy * qz - qw * qx)
    r20 = 2.0 * (qx * qz - qw * qy)
    r21 = 2.0 * (qy * qz + qw * qx)
    r22 = 1.0 - 2.0 * (qx * qx + qy * qy)
    px, py, pz = body.position
    px += dt * (r00 * nvx + r01 * nvy + r02 * nvz)
    py += dt * (r10 * nvx + r11 * nvy + r12 * nvz)
    pz += dt * (r20 * nvx + r21 * nvy + r22 * nvz)

    # q_dot = 0.5 q (0, w), renormalized
    h = 0.5 * dt
    nqw = qw - h * (qx * nwx + qy * nwy + qz * nwz)
    nqx = qx + h * (qw * nwx + qy * nwz - qz * nwy)
    nqy = qy + h * (qw * nwy + qz * nwx - qx * nwz)
    nqz = qz + h * (qw * nwz + qx * nwy - qy * nwx)
    norm = np.sqrt(nqw * nqw + nqx * nqx + nqy * nqy + nqz * nqz)

    out = object.__new__(RigidBody)
    out.position = np.array([px, py, pz])
    out.orientation = np.array([nqw / norm, nqx / norm, nqy / norm, nqz / norm])
    out.linear_velocity = np.array([nvx, nvy, nvz])
    out.angular_velocity = np.array([nwx, nwy, nwz])
    out.mass = m
    out.inertia_diagonal = body.inertia_diagonal
    out.buoyancy_force = body.buoyancy_force
    out.drag_coefficients = body.drag_coefficients
    return out
