"""Numba kernels: explicit dynamics, implicit integrators, step Jacobians.

State layout (10-vector):
    x = [psi, phi, theta, dpsi, dphi, dtheta, qD, qR, dqD, dqR]

The implicit integrators solve the stage equations with a Newton iteration
using the analytic continuous-time Jacobian; they return status codes instead
of raising so they can run inside compiled rollout loops.
"""

import numpy as np
from numba import njit

from . import _eom

# state vector indices
PSI, PHI, THETA, DPSI, DPHI, DTHETA, QD, QR, DQD, DQR = range(10)

# step() status codes
STEP_OK = 0
STEP_NO_CONVERGENCE = 1
STEP_GIMBAL = 2

GIMBAL_EPS = 1e-3
GIMBAL_LIMIT = np.pi / 2 - GIMBAL_EPS


@njit(cache=True)
def accel_5(x, tau_d, tau_r, p):
    """Solve M @ a = -h for the accelerations (phi, theta, psi, qD, qR)."""
    M = _eom.mass_matrix(x[PHI], x[THETA], p)
    h = _eom.bias_vector(x[PHI], x[THETA], x[DPSI], x[DPHI], x[DTHETA],
                         x[DQD], x[DQR], tau_d, tau_r, p)
    return np.linalg.solve(M, -h)


@njit(cache=True)
def xdot(x, tau_d, tau_r, p):
    """Explicit continuous-time dynamics f(x, u)."""
    a = accel_5(x, tau_d, tau_r, p)
    out = np.empty(10, dtype=np.float64)
    out[PSI] = x[DPSI]
    out[PHI] = x[DPHI]
    out[THETA] = x[DTHETA]
    out[DPSI] = a[2]
    out[DPHI] = a[0]
    out[DTHETA] = a[1]
    out[QD] = x[DQD]
    out[QR] = x[DQR]
    out[DQD] = a[3]
    out[DQR] = a[4]
    return out


@njit(cache=True)
def xdot_jacobians(x, tau_d, tau_r, p):
    """Continuous-time A = df/dx (10x10) and B = df/du (10x2).

    Accelerations come from M(q) a = -h(q, qdot, u); their derivatives follow
    from the implicit function theorem with one factorization of M.
    """
    M = _eom.mass_matrix(x[PHI], x[THETA], p)
    h = _eom.bias_vector(x[PHI], x[THETA], x[DPSI], x[DPHI], x[DTHETA],
                         x[DQD], x[DQR], tau_d, tau_r, p)
    a = np.linalg.solve(M, -h)

    dM_dphi = _eom.mass_matrix_dphi(x[PHI], x[THETA], p)
    dM_dtheta = _eom.mass_matrix_dtheta(x[PHI], x[THETA], p)
    # columns: phi, theta, dpsi, dphi, dtheta, dqD, dqR
    dh = _eom.bias_jac_state(x[PHI], x[THETA], x[DPSI], x[DPHI], x[DTHETA],
                             x[DQD], x[DQR], tau_d, tau_r, p)
    dh_u = _eom.bias_jac_input(x[PHI], x[THETA], p)

    rhs = np.empty((5, 9), dtype=np.float64)
    rhs[:, 0] = -(dM_dphi @ a + dh[:, 0])
    rhs[:, 1] = -(dM_dtheta @ a + dh[:, 1])
    for j in range(2, 7):
        rhs[:, j] = -dh[:, j]
    rhs[:, 7] = -dh_u[:, 0]
    rhs[:, 8] = -dh_u[:, 1]
    da = np.linalg.solve(M, rhs)  # d(accel)/d(phi,theta,dpsi,dphi,dtheta,dqD,dqR,tauD,tauR)

    A = np.zeros((10, 10), dtype=np.float64)
    B = np.zeros((10, 2), dtype=np.float64)
    A[PSI, DPSI] = 1.0
    A[PHI, DPHI] = 1.0
    A[THETA, DTHETA] = 1.0
    A[QD, DQD] = 1.0
    A[QR, DQR] = 1.0
    # accel rows: xdot indices (DPSI, DPHI, DTHETA, DQD, DQR) <- accel rows (2,0,1,3,4)
    acc_rows = (DPSI, DPHI, DTHETA, DQD, DQR)
    acc_idx = (2, 0, 1, 3, 4)
    state_cols = (PHI, THETA, DPSI, DPHI, DTHETA, DQD, DQR)
    for r in range(5):
        row = acc_rows[r]
        src = acc_idx[r]
        for c in range(7):
            A[row, state_cols[c]] = da[src, c]
        B[row, 0] = da[src, 7]
        B[row, 1] = da[src, 8]
    return A, B


@njit(cache=True)
def implicit_residual(x, accel, tau_d, tau_r, p):
    """Residual of the implicit equations of motion at a trial acceleration."""
    M = _eom.mass_matrix(x[PHI], x[THETA], p)
    h = _eom.bias_vector(x[PHI], x[THETA], x[DPSI], x[DPHI], x[DTHETA],
                         x[DQD], x[DQR], tau_d, tau_r, p)
    return M @ accel + h


@njit(cache=True)
def step_midpoint(x, tau_d, tau_r, p, dt, tol, max_iter):
    """One implicit-midpoint step.  Returns (x_new, status, iters, residual)."""
    if np.abs(x[PHI]) >= GIMBAL_LIMIT:
        return x.copy(), STEP_GIMBAL, 0, np.inf
    # explicit Euler predictor
    f0 = xdot(x, tau_d, tau_r, p)
    y = x + dt * f0
    xm = 0.5 * (x + y)
    A, _ = xdot_jacobians(xm, tau_d, tau_r, p)
    J = np.eye(10) - 0.5 * dt * A
    g = y - x - dt * xdot(xm, tau_d, tau_r, p)
    res = np.abs(g).max()
    for it in range(max_iter):
        if np.abs(0.5 * (x[PHI] + y[PHI])) >= GIMBAL_LIMIT:
            return y, STEP_GIMBAL, it, res
        if res <= tol:
            return y, STEP_OK, it, res
        if it > 0 and it % 3 == 0:
            A, _ = xdot_jacobians(0.5 * (x + y), tau_d, tau_r, p)
            J = np.eye(10) - 0.5 * dt * A
        dy = np.linalg.solve(J, g)
        # damped update: the yaw-friction kink can defeat full steps
        alpha = 1.0
        accepted = False
        for _ in range(8):
            y_try = y - alpha * dy
            g_try = y_try - x - dt * xdot(0.5 * (x + y_try), tau_d, tau_r, p)
            res_try = np.abs(g_try).max()
            if np.isfinite(res_try) and res_try < res:
                y = y_try
                g = g_try
                res = res_try
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            A, _ = xdot_jacobians(0.5 * (x + y), tau_d, tau_r, p)
            J = np.eye(10) - 0.5 * dt * A
    return y, STEP_NO_CONVERGENCE, max_iter, res


@njit(cache=True)
def step_midpoint_jac(x, tau_d, tau_r, p, dt, tol, max_iter):
    """Implicit-midpoint step plus exact step Jacobians Fx, Fu.

    From G(y) = y - x - dt*f((x+y)/2, u) = 0:
        Fx = (I - dt/2 A_m)^-1 (I + dt/2 A_m),  Fu = (I - dt/2 A_m)^-1 dt B_m
    with A_m, B_m evaluated at the converged midpoint.
    """
    y, status, iters, res = step_midpoint(x, tau_d, tau_r, p, dt, tol, max_iter)
    if status != STEP_OK:
        return y, np.eye(10), np.zeros((10, 2)), status, iters, res
    xm = 0.5 * (x + y)
    A, B = xdot_jacobians(xm, tau_d, tau_r, p)
    J = np.eye(10) - 0.5 * dt * A
    Fx = np.linalg.solve(J, np.eye(10) + 0.5 * dt * A)
    Fu = np.linalg.solve(J, dt * B)
    return y, Fx, Fu, status, iters, res


# Radau IIA, 2 stages, order 3.
_RADAU_A11, _RADAU_A12 = 5.0 / 12.0, -1.0 / 12.0
_RADAU_A21, _RADAU_A22 = 3.0 / 4.0, 1.0 / 4.0


@njit(cache=True)
def step_radau3(x, tau_d, tau_r, p, dt, tol, max_iter):
    """One 2-stage Radau IIA (order 3) step.  Same return contract as midpoint."""
    if np.abs(x[PHI]) >= GIMBAL_LIMIT:
        return x.copy(), STEP_GIMBAL, 0, np.inf
    f0 = xdot(x, tau_d, tau_r, p)
    k1 = f0.copy()
    k2 = f0.copy()
    A, _ = xdot_jacobians(x, tau_d, tau_r, p)
    # simplified Newton on stacked stage equations
    J = np.empty((20, 20), dtype=np.float64)
    for i in range(20):
        for j in range(20):
            J[i, j] = 0.0
    for i in range(10):
        J[i, i] = 1.0
        J[10 + i, 10 + i] = 1.0
        for j in range(10):
            J[i, j] -= dt * _RADAU_A11 * A[i, j]
            J[i, 10 + j] -= dt * _RADAU_A12 * A[i, j]
            J[10 + i, j] -= dt * _RADAU_A21 * A[i, j]
            J[10 + i, 10 + j] -= dt * _RADAU_A22 * A[i, j]
    g = np.empty(20, dtype=np.float64)
    res = np.inf
    for it in range(max_iter):
        x1 = x + dt * (_RADAU_A11 * k1 + _RADAU_A12 * k2)
        x2 = x + dt * (_RADAU_A21 * k1 + _RADAU_A22 * k2)
        if np.abs(x1[PHI]) >= GIMBAL_LIMIT or np.abs(x2[PHI]) >= GIMBAL_LIMIT:
            return x2, STEP_GIMBAL, it, res
        g[:10] = k1 - xdot(x1, tau_d, tau_r, p)
        g[10:] = k2 - xdot(x2, tau_d, tau_r, p)
        res = np.abs(g).max()
        if res <= tol:
            return x2, STEP_OK, it, res
        d = np.linalg.solve(J, g)
        k1 = k1 - d[:10]
        k2 = k2 - d[10:]
        if not (np.isfinite(k1).all() and np.isfinite(k2).all()):
            return x, STEP_NO_CONVERGENCE, it, res
    return x + dt * (_RADAU_A21 * k1 + _RADAU_A22 * k2), STEP_NO_CONVERGENCE, max_iter, res


@njit(cache=True)
def rollout_feedback(x0, k_full, x_ref, switch_tick, x_ref2, n_ticks, dt, p,
                     tau_max, crash_angle, tol, max_iter):
    """Closed-loop rollout under u = K (x - x_ref), with a mid-run reference switch.

    Returns (states (n+1,10), torques (n,2), n_done, status).  status: 0 ok,
    1 crash (tilt beyond crash_angle or gimbal guard), 2 integrator failure.
    """
    xs = np.zeros((n_ticks + 1, 10), dtype=np.float64)
    us = np.zeros((n_ticks, 2), dtype=np.float64)
    xs[0] = x0
    x = x0.copy()
    for t in range(n_ticks):
        ref = x_ref if t < switch_tick else x_ref2
        e = x - ref
        tau_d = 0.0
        tau_r = 0.0
        for j in range(10):
            tau_d += k_full[0, j] * e[j]
            tau_r += k_full[1, j] * e[j]
        tau_d = min(max(tau_d, -tau_max), tau_max)
        tau_r = min(max(tau_r, -tau_max), tau_max)
        x, status, _, _ = step_midpoint(x, tau_d, tau_r, p, dt, tol, max_iter)
        us[t, 0] = tau_d
        us[t, 1] = tau_r
        xs[t + 1] = x
        if status == STEP_GIMBAL:
            return xs, us, t + 1, 1
        if status != STEP_OK:
            return xs, us, t + 1, 2
        if np.abs(x[PHI]) > crash_angle or np.abs(x[THETA]) > crash_angle:
            return xs, us, t + 1, 1
    return xs, us, n_ticks, 0


# ---------------------------------------------------------------------------
# Ground support for lying poses: a unilateral spring-damper torque on the
# roll/pitch rows once the body edge passes the lie angle.  The contact can
# only push back toward upright.
# ---------------------------------------------------------------------------

@njit(cache=True)
def support_torque(x, lie_roll, lie_pitch, k_sup, d_sup):
    """Generalized support torques (5-vector) and their local stiffness terms.

    Hunt-Crossley style contact: torque -(k + d*rate) * penetration so the
    force is continuous at the contact boundary even for fast impacts (a
    plain spring-damper is discontinuous in the rate term and stalls the
    implicit-step Newton iteration).  The contact can only push back toward
    upright.  Returns (ext, d_ext): ext rows follow the EOM ordering (phi,
    theta, psi, qD, qR); d_ext is a (2, 2) block [[d/dang, d/drate]] for the
    two active rows.
    """
    ext = np.zeros(5)
    d_ext = np.zeros((2, 2))
    pairs = ((x[PHI], x[DPHI], lie_roll), (x[THETA], x[DTHETA], lie_pitch))
    for row, (ang, rate, lie) in enumerate(pairs):
        if ang > lie:
            pen = ang - lie
            tau = -(k_sup + d_sup * rate) * pen
            if tau < 0.0:
                ext[row] = tau
                d_ext[row, 0] = -(k_sup + d_sup * rate)
                d_ext[row, 1] = -d_sup * pen
        elif ang < -lie:
            pen = ang + lie
            tau = -(k_sup + d_sup * (-rate)) * pen
            if tau > 0.0:
                ext[row] = tau
                d_ext[row, 0] = -(k_sup - d_sup * rate)
                d_ext[row, 1] = d_sup * pen
    return ext, d_ext


@njit(cache=True)
def xdot_sup(x, tau_d, tau_r, p, lie_roll, lie_pitch, k_sup, d_sup):
    """Explicit dynamics including the ground-support torques."""
    M = _eom.mass_matrix(x[PHI], x[THETA], p)
    h = _eom.bias_vector(x[PHI], x[THETA], x[DPSI], x[DPHI], x[DTHETA],
                         x[DQD], x[DQR], tau_d, tau_r, p)
    ext, _ = support_torque(x, lie_roll, lie_pitch, k_sup, d_sup)
    a = np.linalg.solve(M, ext - h)
    out = np.empty(10, dtype=np.float64)
    out[PSI] = x[DPSI]
    out[PHI] = x[DPHI]
    out[THETA] = x[DTHETA]
    out[DPSI] = a[2]
    out[DPHI] = a[0]
    out[DTHETA] = a[1]
    out[QD] = x[DQD]
    out[QR] = x[DQR]
    out[DQD] = a[3]
    out[DQR] = a[4]
    return out


@njit(cache=True)
def _jac_sup(x, tau_d, tau_r, p, lie_roll, lie_pitch, k_sup, d_sup):
    A, B = xdot_jacobians(x, tau_d, tau_r, p)
    ext, d_ext = support_torque(x, lie_roll, lie_pitch, k_sup, d_sup)
    if ext[0] != 0.0 or ext[1] != 0.0:
        M = _eom.mass_matrix(x[PHI], x[THETA], p)
        rhs = np.zeros((5, 4))   # columns: phi, dphi, theta, dtheta
        rhs[0, 0] = d_ext[0, 0]
        rhs[0, 1] = d_ext[0, 1]
        rhs[1, 2] = d_ext[1, 0]
        rhs[1, 3] = d_ext[1, 1]
        da = np.linalg.solve(M, rhs)
        acc_rows = (DPSI, DPHI, DTHETA, DQD, DQR)
        acc_idx = (2, 0, 1, 3, 4)
        cols = (PHI, DPHI, THETA, DTHETA)
        for r in range(5):
            for c in range(4):
                A[acc_rows[r], cols[c]] += da[acc_idx[r], c]
    return A, B


@njit(cache=True)
def step_midpoint_sup(x, tau_d, tau_r, p, dt, tol, max_iter,
                      lie_roll, lie_pitch, k_sup, d_sup):
    """Implicit-midpoint step with ground support.  Same contract as step_midpoint."""
    if np.abs(x[PHI]) >= GIMBAL_LIMIT:
        return x.copy(), STEP_GIMBAL, 0, np.inf
    f0 = xdot_sup(x, tau_d, tau_r, p, lie_roll, lie_pitch, k_sup, d_sup)
    y = x + dt * f0
    xm = 0.5 * (x + y)
    A, _ = _jac_sup(xm, tau_d, tau_r, p, lie_roll, lie_pitch, k_sup, d_sup)
    J = np.eye(10) - 0.5 * dt * A
    g = y - x - dt * xdot_sup(xm, tau_d, tau_r, p,
                              lie_roll, lie_pitch, k_sup, d_sup)
    res = np.abs(g).max()
    for it in range(max_iter):
        if np.abs(0.5 * (x[PHI] + y[PHI])) >= GIMBAL_LIMIT:
            return y, STEP_GIMBAL, it, res
        if res <= tol:
            return y, STEP_OK, it, res
        if it > 0 and it % 3 == 0:
            A, _ = _jac_sup(0.5 * (x + y), tau_d, tau_r, p,
                            lie_roll, lie_pitch, k_sup, d_sup)
            J = np.eye(10) - 0.5 * dt * A
        dy = np.linalg.solve(J, g)
        alpha = 1.0
        accepted = False
        for _ in range(8):
            y_try = y - alpha * dy
            g_try = y_try - x - dt * xdot_sup(0.5 * (x + y_try), tau_d, tau_r,
                                              p, lie_roll, lie_pitch,
                                              k_sup, d_sup)
            res_try = np.abs(g_try).max()
            if np.isfinite(res_try) and res_try < res:
                y = y_try
                g = g_try
                res = res_try
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            A, _ = _jac_sup(0.5 * (x + y), tau_d, tau_r, p,
                            lie_roll, lie_pitch, k_sup, d_sup)
            J = np.eye(10) - 0.5 * dt * A
    return y, STEP_NO_CONVERGENCE, max_iter, res


@njit(cache=True)
def step_zoh(x, tau_d, tau_r, p, dt, n_sub, tol, max_iter):
    """Hold u for dt, integrating with n_sub implicit-midpoint substeps."""
    h = dt / n_sub
    y = x
    status = STEP_OK
    for _ in range(n_sub):
        y, status, _, _ = step_midpoint(y, tau_d, tau_r, p, h, tol, max_iter)
        if status != STEP_OK:
            break
    return y, status


@njit(cache=True)
def step_zoh_jac(x, tau_d, tau_r, p, dt, n_sub, tol, max_iter):
    """step_zoh plus d(x+)/dx (10x10) and d(x+)/du (10x2) by chaining."""
    h = dt / n_sub
    y = x
    Fx = np.eye(10)
    Fu = np.zeros((10, 2))
    status = STEP_OK
    for _ in range(n_sub):
        y, fx, fu, status, _, _ = step_midpoint_jac(y, tau_d, tau_r, p, h,
                                                    tol, max_iter)
        if status != STEP_OK:
            break
        Fx = fx @ Fx
        Fu = fx @ Fu + fu
    return y, Fx, Fu, status
