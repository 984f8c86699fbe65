"""Sparse balancing state feedback and its Riccati-based initializer."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, solve_continuous_are, solve_discrete_are

from .. import dynamics as dyn
from ..dynamics import integrators as itg

#: columns fed by each torque channel (drive <- pitch plane, reaction <- roll)
PATTERN_D = (dyn.THETA, dyn.DTHETA, dyn.QD, dyn.DQD)
PATTERN_R = (dyn.PHI, dyn.DPHI, dyn.QR, dyn.DQR)


class RiccatiError(ArithmeticError):
    """The reduced Riccati equation could not be solved."""


class ProjectionLostStabilityError(ArithmeticError):
    """Sparsified gains no longer stabilize the nonlinear simulation."""


@dataclass(frozen=True)
class GainMatrix:
    """8 free gains of the 2x10 feedback u = K x (fixed zero pattern)."""

    K_D: tuple
    K_R: tuple

    def __post_init__(self):
        if len(self.K_D) != 4 or len(self.K_R) != 4:
            raise ValueError("K_D and K_R must hold 4 gains each")
        if not np.isfinite(np.concatenate([self.K_D, self.K_R])).all():
            raise ValueError("gains must be finite")

    def expand(self):
        """Full 2x10 matrix with the 8 gains in their fixed positions."""
        K = np.zeros((2, 10))
        for value, col in zip(self.K_D, PATTERN_D):
            K[0, col] = value
        for value, col in zip(self.K_R, PATTERN_R):
            K[1, col] = value
        return K

    def as_vector(self):
        """(K_D, K_R) stacked into 8 numbers (the tuning parameterization)."""
        return np.array(list(self.K_D) + list(self.K_R), dtype=float)

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float).reshape(8)
        return cls(K_D=tuple(v[:4]), K_R=tuple(v[4:]))


def state_feedback(K, x, x_ref=None):
    """u = expand(K) @ (x - x_ref), saturated to the torque limits.

    Returns (torques, saturated_flag).
    """
    x = np.asarray(x, dtype=float)
    e = x if x_ref is None else x - np.asarray(x_ref, dtype=float)
    u = K.expand() @ e
    clipped = np.clip(u, -dyn.TAU_MAX, dyn.TAU_MAX)
    return clipped, bool(np.any(clipped != u))


def controllable_subspace(A, B, rel_tol=1e-8):
    """Orthonormal basis of span[B, AB, ...] via column-normalized SVD."""
    blocks = [B]
    for _ in range(A.shape[0] - 1):
        blocks.append(A @ blocks[-1])
    ctrb = np.hstack(blocks)
    norms = np.linalg.norm(ctrb, axis=0)
    u, sv, _ = np.linalg.svd(ctrb / np.where(norms == 0, 1.0, norms))
    rank = int(np.sum(sv > rel_tol * sv[0]))
    return u[:, :rank], rank, sv


# LQR weights tuned in simulation for a wide stand-up catch basin: soft wheel
# position (slow rewind avoids saturation chatter), strong wheel-rate damping
DEFAULT_LQR_Q = np.array([0.0, 1600.0, 1600.0, 0.0, 0.5, 0.5,
                          0.001, 0.001, 0.08, 0.08])
DEFAULT_LQR_R = np.array([3.0, 3.0])


def lqr_init(model, Q=None, R=None, params=None, verify=True):
    """Baseline gains: Riccati solve on the controllable subspace, projected
    onto the sparse pattern, then verified on the nonlinear simulation.
    """
    Q = DEFAULT_LQR_Q if Q is None else np.asarray(Q, dtype=float)
    R = DEFAULT_LQR_R if R is None else np.asarray(R, dtype=float)
    V, rank, _ = controllable_subspace(model.A, model.B)
    A_r = V.T @ model.A @ V
    B_r = V.T @ model.B
    Q_r = V.T @ np.diag(Q) @ V
    Q_r = 0.5 * (Q_r + Q_r.T) + 1e-12 * np.eye(rank)
    try:
        P = solve_continuous_are(A_r, B_r, Q_r, np.diag(R))
    except Exception as exc:
        raise RiccatiError(str(exc)) from exc
    K_reduced = np.linalg.solve(np.diag(R), B_r.T @ P)
    closed = A_r - B_r @ K_reduced
    if np.linalg.eigvals(closed).real.max() >= 0:
        raise RiccatiError("reduced closed loop not Hurwitz")
    K_full = -K_reduced @ V.T          # u = K x convention
    gains = GainMatrix(K_D=tuple(K_full[0, list(PATTERN_D)]),
                       K_R=tuple(K_full[1, list(PATTERN_R)]))
    if verify:
        p = (params or dyn.Params()).as_array()
        offset = np.deg2rad(5.0)
        for s_phi in (-1, 1):
            for s_th in (-1, 1):
                x0 = dyn.state(phi=s_phi * offset, theta=s_th * offset)
                xs, _, n_done, status = itg.rollout_feedback(
                    x0, gains.expand(), np.zeros(10), 1 << 30, np.zeros(10),
                    3000, 1e-3, p, dyn.TAU_MAX, np.deg2rad(45.0), 1e-10, 50)
                final = xs[n_done]
                if status != 0 or max(abs(final[dyn.PHI]),
                                      abs(final[dyn.THETA])) > np.deg2rad(2.0):
                    raise ProjectionLostStabilityError(
                        f"projected gains fail from offsets "
                        f"({s_phi * 5}, {s_th * 5}) deg")
    return gains


def zoh_discretize(model, dt):
    """Zero-order-hold discretization via the augmented matrix exponential."""
    n, m = model.B.shape
    M = np.zeros((n + m, n + m))
    M[:n, :n] = model.A
    M[:n, n:] = model.B
    E = expm(M * dt)
    return E[:n, :n], E[:n, n:]


# discrete-design weights: gentler torques suit the coarse hold
DEFAULT_DLQR_Q = np.array([0.0, 300.0, 300.0, 0.0, 0.5, 0.5,
                           0.001, 0.001, 0.4, 0.4])
DEFAULT_DLQR_R = np.array([20.0, 20.0])


def lqr_init_discrete(model, dt, Q=None, R=None, params=None, verify=True):
    """Sparse gains that stabilize under zero-order hold at period dt.

    The 1 kHz balancing gains are far too aggressive for the coarser
    prediction tick used inside the optimal-control solver; this variant
    solves the discrete Riccati equation at that tick instead.
    """
    Q = DEFAULT_DLQR_Q if Q is None else np.asarray(Q, dtype=float)
    R = DEFAULT_DLQR_R if R is None else np.asarray(R, dtype=float)
    A_d, B_d = zoh_discretize(model, dt)
    V, rank, _ = controllable_subspace(model.A, model.B)
    A_r = V.T @ A_d @ V
    B_r = V.T @ B_d
    Q_r = V.T @ np.diag(Q) @ V
    Q_r = 0.5 * (Q_r + Q_r.T) + 1e-12 * np.eye(rank)
    try:
        P = solve_discrete_are(A_r, B_r, Q_r * dt, np.diag(R) * dt)
    except Exception as exc:
        raise RiccatiError(str(exc)) from exc
    K_reduced = np.linalg.solve(np.diag(R) * dt + B_r.T @ P @ B_r,
                                B_r.T @ P @ A_r)
    closed = A_r - B_r @ K_reduced
    if np.abs(np.linalg.eigvals(closed)).max() >= 1.0:
        raise RiccatiError("reduced discrete closed loop not Schur stable")
    K_full = -K_reduced @ V.T
    gains = GainMatrix(K_D=tuple(K_full[0, list(PATTERN_D)]),
                       K_R=tuple(K_full[1, list(PATTERN_R)]))
    if verify:
        p = (params or dyn.Params()).as_array()
        K = gains.expand()
        offset = np.deg2rad(5.0)
        for s_phi in (-1, 1):
            for s_th in (-1, 1):
                x = dyn.state(phi=s_phi * offset, theta=s_th * offset)
                n_steps = int(round(2.5 / dt))
                ok = True
                for _ in range(n_steps):
                    u = np.clip(K @ x, -dyn.TAU_MAX, dyn.TAU_MAX)
                    x, status = itg.step_zoh(x, u[0], u[1], p, dt, 2, 1e-10, 50)
                    if status != itg.STEP_OK or \
                            max(abs(x[dyn.PHI]), abs(x[dyn.THETA])) > 0.8:
                        ok = False
                        break
                if not ok or max(abs(x[dyn.PHI]),
                                 abs(x[dyn.THETA])) > np.deg2rad(2.0):
                    raise ProjectionLostStabilityError(
                        f"discrete gains fail at dt={dt} from "
                        f"({s_phi * 5}, {s_th * 5}) deg")
    return gains
