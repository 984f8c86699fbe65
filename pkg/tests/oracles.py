"""Independent oracles used by the test-suite.

The Newton-Euler residual here is a second, structurally different derivation
of the unicycle dynamics: rotation matrices composed with explicit product
rules, angular velocity/acceleration extracted from R' R^T, and Kane
projection assembled numerically.  No code is shared with the generated
kernels.
"""

import numpy as np

EZ = np.array([0.0, 0.0, 1.0])
EX = np.array([1.0, 0.0, 0.0])
EY = np.array([0.0, 1.0, 0.0])


def _rx(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[1, 0, 0], [0, c, -s], [0, s, c]], dtype=float)


def _ry(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]], dtype=float)


def _rz(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]], dtype=float)


_DX = np.array([[0, 0, 0], [0, 0, -1], [0, 1, 0]], dtype=float)
_DY = np.array([[0, 0, 1], [0, 0, 0], [-1, 0, 0]], dtype=float)
_DZ = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)


class _Rot:
    """Rotation matrix about a fixed axis with time derivatives R, R', R''."""

    def __init__(self, kind, angle, rate, acc):
        base = {"x": _rx, "y": _ry, "z": _rz}[kind]
        gen = {"x": _DX, "y": _DY, "z": _DZ}[kind]
        self.R = base(angle)
        self.dR = gen @ self.R * rate
        self.ddR = gen @ gen @ self.R * rate**2 + gen @ self.R * acc

    @staticmethod
    def chain(*rots):
        """Product of rotations with product-rule derivatives."""
        R = np.eye(3)
        dR = np.zeros((3, 3))
        ddR = np.zeros((3, 3))
        for r in rots:
            ddR = ddR @ r.R + 2.0 * dR @ r.dR + R @ r.ddR
            dR = dR @ r.R + R @ r.dR
            R = R @ r.R
        out = _Rot.__new__(_Rot)
        out.R, out.dR, out.ddR = R, dR, ddR
        return out

    def omega(self):
        w = self.dR @ self.R.T
        return np.array([w[2, 1], w[0, 2], w[1, 0]])

    def alpha(self):
        w = self.ddR @ self.R.T + self.dR @ self.dR.T
        ws = 0.5 * (w - w.T)
        return np.array([ws[2, 1], ws[0, 2], ws[1, 0]])


def _bodies(x, accel, p):
    """Kinematics of (drive wheel, body, reaction wheel) for state x.

    accel is (phi'', theta'', psi'', qD'', qR'').  Returns per body:
    (mass, J_body_diag, rot, v, a, w, al) with translations measured from the
    rolling contact whose velocity follows from the no-slip constraint.
    """
    (m_w, m_b, i_off, i_spin, i_bx, i_by, i_bz, r_w, l_w, _c1, _c2) = p
    psi_, phi_, th = x[0], x[1], x[2]
    dpsi, dphi, dth = x[3], x[4], x[5]
    dqd, dqr = x[8], x[9]
    ddphi, ddth, ddpsi, ddqd, ddqr = accel

    rz = _Rot("z", psi_, dpsi, ddpsi)
    rx = _Rot("x", phi_, dphi, ddphi)
    ry = _Rot("y", th, dth, ddth)
    ry_w = _Rot("y", th + x[6], dth + dqd, ddth + ddqd)
    rx_r = _Rot("x", x[7], dqr, ddqr)

    frame = _Rot.chain(rz, rx)            # yaw-roll carrier
    body = _Rot.chain(rz, rx, ry)
    wheel_d = _Rot.chain(rz, rx, ry_w)
    wheel_r = _Rot.chain(rz, rx, ry, rx_r)

    # contact point velocity/acceleration (no-slip rolling)
    spin = dth + dqd
    dspin = ddth + ddqd
    head = np.array([np.cos(psi_), np.sin(psi_), 0.0])
    dhead = np.array([-np.sin(psi_), np.cos(psi_), 0.0]) * dpsi
    vc = r_w * spin * head
    ac = r_w * (dspin * head + spin * dhead)

    def point(rot, offset):
        pos = rot.R @ offset
        vel = rot.dR @ offset
        acc = rot.ddR @ offset
        return pos, vel, acc

    # wheel centre r_w up the carrier z; body and reaction wheel l/2 and l
    # further along the body z axis
    _, v_d, a_d = point(frame, r_w * EZ)
    _, v_b2, a_b2 = point(body, (l_w / 2) * EZ)
    _, v_r2, a_r2 = point(body, l_w * EZ)

    v_wd = vc + v_d
    a_wd = ac + a_d
    v_bd = v_wd + v_b2
    a_bd = a_wd + a_b2
    v_rd = v_wd + v_r2
    a_rd = a_wd + a_r2

    return [
        (m_w, np.diag([i_off, i_spin, i_off]), wheel_d, v_wd, a_wd,
         wheel_d.omega(), wheel_d.alpha()),
        (m_b, np.diag([i_bx, i_by, i_bz]), body, v_bd, a_bd,
         body.omega(), body.alpha()),
        (m_w, np.diag([i_spin, i_off, i_off]), wheel_r, v_rd, a_rd,
         wheel_r.omega(), wheel_r.alpha()),
    ]


def newton_euler_residual(x, accel, u, p, g_acc=9.81):
    """Generalized force residual, rows ordered (phi, theta, psi, qD, qR)."""
    x = np.asarray(x, dtype=float)
    accel = np.asarray(accel, dtype=float)
    p = np.asarray(p, dtype=float)
    tau_d, tau_r = float(u[0]), float(u[1])
    c1, c2 = p[9], p[10]

    bodies = _bodies(x, accel, p)

    # partial velocities: speeds are linear, so evaluate at unit speeds
    n_speeds = 5
    part_v = np.zeros((3, n_speeds, 3))
    part_w = np.zeros((3, n_speeds, 3))
    speed_slots = [(4, None), (5, None), (3, None), (8, None), (9, None)]
    for j, (slot, _) in enumerate(speed_slots):
        xu = x.copy()
        xu[3:6] = 0.0
        xu[8:] = 0.0
        xu[slot] = 1.0
        for i, (_, _, _, v, _, w, _) in enumerate(_bodies(xu, np.zeros(5), p)):
            part_v[i, j] = v
            part_w[i, j] = w

    # applied torques in world coordinates
    axis_d = _Rot.chain(_Rot("z", x[0], 0, 0), _Rot("x", x[1], 0, 0)).R @ EY
    axis_r = _Rot.chain(_Rot("z", x[0], 0, 0), _Rot("x", x[1], 0, 0),
                        _Rot("y", x[2], 0, 0)).R @ EX
    fric = -c1 * np.tanh(c2 * x[3]) * EZ
    torques = [tau_d * axis_d + fric, -tau_d * axis_d - tau_r * axis_r,
               tau_r * axis_r]

    res = np.zeros(n_speeds)
    for i, (m, j_body, rot, _v, a, w, al) in enumerate(bodies):
        iw = rot.R @ j_body @ rot.R.T
        hdot = iw @ al + np.cross(w, iw @ w)
        grav = -m * g_acc * EZ
        for j in range(n_speeds):
            res[j] += part_v[i, j] @ (m * a) + part_w[i, j] @ hdot
            res[j] -= part_v[i, j] @ grav + part_w[i, j] @ torques[i]
    return res
