"""Nonlinear MPC for yaw orientation and driving.

Direct multiple shooting over (input perturbations v, predicted states x)
with pre-stabilizing feedback u = K (x - x_ref) + v, box constraints on
states and inputs, and a zero terminal constraint on every regulated
coordinate (the cyclic drive-wheel angle is exempt).  Setpoints enter by
shifting the yaw coordinate and referencing the rate channels in the cost;
the dynamics themselves are yaw-invariant so the shift is exact.

The expert is deliberately offline-grade: one solve takes tens of
milliseconds, which is why the distilled network exists.
"""

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp

from . import dynamics as dyn
from .controllers.feedback import GainMatrix
from .dynamics import integrators as itg
from .nlp import SqpProblem, SqpSettings, quadratic_objective

#: state cost; the drive-wheel angle gets the near-zero weight so driving is
#: not penalized, the reaction-wheel angle is regulated against windup
DEFAULT_Q = np.array([100.0, 1.0, 1.0, 0.001, 0.01, 1.0,
                      0.0001, 1.0, 0.25, 0.001])
DEFAULT_R = np.array([10.0, 0.01])

#: operating envelope (roll, pitch, yaw rate, wheel rates)
DEFAULT_TILT_MAX = 0.5
DEFAULT_YAW_RATE_MAX = 10.0


@dataclass(frozen=True)
class SetpointFrame:
    yaw_ref: float = 0.0
    yaw_rate_ref: float = 0.0
    drive_rate_ref: float = 0.0

    def __post_init__(self):
        vals = (self.yaw_ref, self.yaw_rate_ref, self.drive_rate_ref)
        if not np.isfinite(vals).all():
            raise ValueError("setpoints must be finite")

    def to_json(self):
        return json.dumps({"yaw_ref": self.yaw_ref,
                           "yaw_rate_ref": self.yaw_rate_ref,
                           "drive_rate_ref": self.drive_rate_ref})

    @classmethod
    def from_dict(cls, obj):
        return cls(yaw_ref=float(obj.get("yaw_ref", 0.0)),
                   yaw_rate_ref=float(obj.get("yaw_rate_ref", 0.0)),
                   drive_rate_ref=float(obj.get("drive_rate_ref", 0.0)))


@dataclass(frozen=True)
class MpcConfig:
    gains: GainMatrix
    params: dyn.Params = field(default_factory=dyn.Params)
    horizon: int = 75
    tick: float = 0.02
    substeps: int = 2
    Q: tuple = tuple(DEFAULT_Q)
    R: tuple = tuple(DEFAULT_R)
    tilt_max: float = DEFAULT_TILT_MAX
    yaw_rate_max: float = DEFAULT_YAW_RATE_MAX
    wheel_rate_max: float = dyn.WHEEL_RATE_MAX
    tau_max: float = dyn.TAU_MAX
    v_max: float = 50.0                 # raw perturbation bound; the
                                        # torque box lives on u = Kx + v
    terminal: str = "hard"              # "hard" | "penalty" | "off"
    tol_terminal: float = 1e-4
    tol_stationarity: float = 1e-6
    max_sqp_iter: int = 40

    def __post_init__(self):
        if self.horizon < 2:
            raise ValueError("horizon must be at least 2")
        if self.terminal not in ("hard", "penalty", "off"):
            raise ValueError(f"unknown terminal mode {self.terminal!r}")

    def digest(self):
        """Stable hash of everything the optimal solution depends on."""
        import hashlib
        payload = json.dumps({
            "gains": list(self.gains.as_vector()),
            "params": list(self.params.as_array()),
            "horizon": self.horizon, "tick": self.tick,
            "substeps": self.substeps, "Q": list(self.Q), "R": list(self.R),
            "tilt_max": self.tilt_max, "yaw_rate_max": self.yaw_rate_max,
            "wheel_rate_max": self.wheel_rate_max, "tau_max": self.tau_max,
            "terminal": self.terminal,
        }, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class OcpSolution:
    v_seq: np.ndarray           # (N, 2)
    x_pred: np.ndarray          # (N+1, 10), shifted coordinates
    u_seq: np.ndarray           # (N, 2) = K (x - r) + v exactly
    status: str                 # "Optimal" | "MaxIter" | "Infeasible"
    objective: float
    stationarity: float
    terminal_residual: float
    iterations: int
    used_penalty: bool = False
    x0_violations: tuple = ()
    first_action: np.ndarray | None = None

    def to_json(self):
        return json.dumps({
            "v_seq": self.v_seq.tolist(), "x_pred": self.x_pred.tolist(),
            "u_seq": self.u_seq.tolist(), "status": self.status,
            "objective": self.objective, "stationarity": self.stationarity,
            "terminal_residual": self.terminal_residual,
            "iterations": self.iterations, "used_penalty": self.used_penalty,
            "x0_violations": list(self.x0_violations),
        }, indent=2)


#: terminal equality applies to every coordinate except the drive-wheel angle
TERMINAL_COORDS = tuple(i for i in range(10) if i != dyn.QD)


def reference_vector(ref):
    """Regulation target in shifted coordinates (yaw folded to zero)."""
    r = np.zeros(10)
    r[dyn.DPSI] = ref.yaw_rate_ref
    r[dyn.DQD] = ref.drive_rate_ref
    return r


def shift_state(x, ref):
    """Fold the yaw reference into the state; wrap the error to (-pi, pi]."""
    z = np.asarray(x, dtype=float).copy()
    err = z[dyn.PSI] - ref.yaw_ref
    z[dyn.PSI] = math.remainder(err, 2.0 * math.pi)
    return z


def state_box(cfg):
    lb = np.full(10, -np.inf)
    ub = np.full(10, np.inf)
    for i in (dyn.PHI, dyn.THETA):
        lb[i], ub[i] = -cfg.tilt_max, cfg.tilt_max
    lb[dyn.DPSI], ub[dyn.DPSI] = -cfg.yaw_rate_max, cfg.yaw_rate_max
    for i in (dyn.DQD, dyn.DQR):
        lb[i], ub[i] = -cfg.wheel_rate_max, cfg.wheel_rate_max
    return lb, ub


def _objective_terms(cfg, x0s, r):
    """P, q, const for sum_k |x_k - r|_Q^2 + |u_k|_R^2 over the packed z."""
    N = cfg.horizon
    n = 2 * N + 10 * N
    Q = np.asarray(cfg.Q)
    R = np.asarray(cfg.R)
    K = cfg.gains.expand()
    KRK = K.T @ np.diag(R) @ K          # from u = K (x - r) + v
    KR = K.T @ np.diag(R)

    rows, cols, vals = [], [], []

    def add_block(r0, c0, M):
        for i in range(M.shape[0]):
            for j in range(M.shape[1]):
                if M[i, j] != 0.0:
                    rows.append(r0 + i)
                    cols.append(c0 + j)
                    vals.append(M[i, j])

    q = np.zeros(n)
    const = float((x0s - r) @ (Q * (x0s - r)))
    # u_0 = K (x0 - r) + v_0 couples only v_0 (x0 fixed)
    add_block(0, 0, 2.0 * np.diag(R))
    q[0:2] += 2.0 * np.diag(R) @ (K @ (x0s - r))
    for k in range(1, N):
        vk = 2 * k
        xk = 2 * N + 10 * (k - 1)
        add_block(vk, vk, 2.0 * np.diag(R))
        add_block(xk, xk, 2.0 * (np.diag(Q) + KRK))
        add_block(xk, vk, 2.0 * KR)
        add_block(vk, xk, 2.0 * KR.T)
        q[xk:xk + 10] += -2.0 * Q * r - 2.0 * KRK @ r
    xN = 2 * N + 10 * (N - 1)
    add_block(xN, xN, 2.0 * np.diag(Q))
    q[xN:xN + 10] += -2.0 * Q * r
    const += float(r @ (Q * r)) * (N - 1) + float(r @ (KRK @ r)) * (N - 1) \
        + float(r @ (Q * r))
    P = sp.csc_matrix((vals, (rows, cols)), shape=(n, n))
    return P, q, const


class MpcSolver:
    """Owns the transcription for one configuration; reusable across solves."""

    def __init__(self, cfg):
        self.cfg = cfg
        self._p = cfg.params.as_array()
        self._K = cfg.gains.expand()
        self._last = None           # previous solution for warm starting

    # -- model helpers --------------------------------------------------------
    def _step(self, x, u):
        y, status = itg.step_zoh(x, u[0], u[1], self._p, self.cfg.tick,
                                 self.cfg.substeps, 1e-10, 50)
        return y, status

    def _step_jac(self, x, u):
        return itg.step_zoh_jac(x, u[0], u[1], self._p, self.cfg.tick,
                                self.cfg.substeps, 1e-10, 50)

    def rollout(self, x0s, r, v_seq):
        """Forward rollout under the pre-stabilizer plus perturbations v."""
        N = self.cfg.horizon
        xs = np.zeros((N + 1, 10))
        xs[0] = x0s
        for k in range(N):
            u = self._K @ (xs[k] - r) + v_seq[k]
            u = np.clip(u, -self.cfg.tau_max, self.cfg.tau_max)
            y, status = self._step(xs[k], u)
            if status != itg.STEP_OK:
                y = xs[k]
            xs[k + 1] = y
        return xs

    def cold_start(self, x0s, r):
        """Initial guess; a yaw error needs a symmetry-breaking lean.

        Yaw authority is a second-order gyroscopic effect (lean times drive
        torque), invisible to any linearization around a roll-free
        trajectory, so the v = 0 guess leaves the QP subproblems with an
        unreachable terminal yaw.  Seed a steady lean-and-drive turn scaled
        to the yaw error instead.
        """
        N = self.cfg.horizon
        v = np.zeros((N, 2))
        yaw_err = x0s[dyn.PSI]
        if abs(yaw_err) > 0.1:
            turn = -np.sign(yaw_err)            # desired yaw change sign
            scale = min(1.0, abs(yaw_err) / 0.8)
            n_on = min(N, max(10, int(0.55 * N)))
            v[:n_on, 0] = 0.15 * scale
            v[:n_on, 1] = -turn * 0.3 * scale
        return v, self.rollout(x0s, r, v)

    # -- packing --------------------------------------------------------------
    def _pack(self, v, xs):
        return np.concatenate([v.reshape(-1), xs[1:].reshape(-1)])

    def _unpack(self, z):
        N = self.cfg.horizon
        v = z[:2 * N].reshape(N, 2)
        xs = z[2 * N:].reshape(N, 10)
        return v, xs

    def _constraints(self, z, x0s, r, terminal, need_jac=True):
        """Shooting gaps (and terminal rows) with the sparse Jacobian."""
        cfg = self.cfg
        N = cfg.horizon
        v, xs_var = self._unpack(z)
        xs = np.vstack([x0s, xs_var])
        n_term = len(TERMINAL_COORDS) if terminal else 0
        m = 10 * N + n_term
        c = np.zeros(m)
        if not need_jac:
            for k in range(N):
                u = self._K @ (xs[k] - r) + v[k]
                y, status = self._step(xs[k], u)
                if status != itg.STEP_OK:
                    y = xs[k]
                c[10 * k:10 * k + 10] = xs[k + 1] - y
            if terminal:
                for i, coord in enumerate(TERMINAL_COORDS):
                    c[10 * N + i] = xs[N, coord] - r[coord]
            return c, None

        rows, cols, vals = [], [], []

        def put(i0, j0, M):
            rr, cc = np.nonzero(M)
            rows.append(rr + i0)
            cols.append(cc + j0)
            vals.append(M[rr, cc])

        for k in range(N):
            u = self._K @ (xs[k] - r) + v[k]
            y, Fx, Fu, status = self._step_jac(xs[k], u)
            if status != itg.STEP_OK:
                y = xs[k]
                Fx = np.eye(10)
                Fu = np.zeros((10, 2))
            row = 10 * k
            c[row:row + 10] = xs[k + 1] - y
            Fxc = Fx + Fu @ self._K      # chain through the pre-stabilizer
            put(row, 2 * N + 10 * k, np.eye(10))      # d/dx_{k+1}
            put(row, 2 * k, -Fu)                       # d/dv_k
            if k > 0:
                put(row, 2 * N + 10 * (k - 1), -Fxc)   # d/dx_k
        if terminal:
            base = 10 * N
            for i, coord in enumerate(TERMINAL_COORDS):
                c[base + i] = xs[N, coord] - r[coord]
                rows.append(np.array([base + i]))
                cols.append(np.array([2 * N + 10 * (N - 1) + coord]))
                vals.append(np.array([1.0]))
        C = sp.csc_matrix((np.concatenate(vals),
                           (np.concatenate(rows), np.concatenate(cols))),
                          shape=(m, len(z)))
        return c, C

    def _bounds(self, x0s):
        cfg = self.cfg
        N = cfg.horizon
        lb_x, ub_x = state_box(cfg)
        lb = np.concatenate([np.full(2 * N, -cfg.v_max),
                             np.tile(lb_x, N)])
        ub = np.concatenate([np.full(2 * N, cfg.v_max),
                             np.tile(ub_x, N)])
        return lb, ub

    def _input_ineq(self, x0s, r):
        """|K (x_k - r) + v_k| <= tau_max as linear rows over z."""
        cfg = self.cfg
        N = cfg.horizon
        n = 2 * N + 10 * N
        rows, cols, vals = [], [], []
        lo = np.zeros(2 * N)
        hi = np.zeros(2 * N)
        for k in range(N):
            for i in range(2):
                row = 2 * k + i
                rows.append(row)
                cols.append(2 * k + i)
                vals.append(1.0)
                if k == 0:
                    # u_0 = K (x0 - r) + v_0 with x0 fixed
                    off = -float(self._K[i] @ (x0s - r))
                else:
                    # row value v_k + K x_k, so the -K r part shifts the bounds
                    for j in range(10):
                        if self._K[i, j] != 0.0:
                            rows.append(row)
                            cols.append(2 * N + 10 * (k - 1) + j)
                            vals.append(self._K[i, j])
                    off = float(self._K[i] @ r)
                lo[row] = -cfg.tau_max + off
                hi[row] = cfg.tau_max + off
        G = sp.csc_matrix((vals, (rows, cols)), shape=(2 * N, n))
        return G, lo, hi

    # -- main entry ------------------------------------------------------------
    def solve(self, x0, ref=None, warm=True):
        cfg = self.cfg
        ref = ref or SetpointFrame()
        x0 = dyn.check_state(x0)
        x0s = shift_state(x0, ref)
        r = reference_vector(ref)

        lb_x, ub_x = state_box(cfg)
        viol = tuple(dyn.STATE_NAMES[i] for i in range(10)
                     if not lb_x[i] - 1e-9 <= x0s[i] <= ub_x[i] + 1e-9)

        P, q, const = _objective_terms(cfg, x0s, r)
        objective = quadratic_objective(P, q)
        constraints = lambda z, need_jac=True: self._constraints(
            z, x0s, r, cfg.terminal != "off", need_jac)
        settings = SqpSettings(max_iter=cfg.max_sqp_iter,
                               tol_stationarity=cfg.tol_stationarity,
                               tol_constraint=1e-8,
                               soft_constraint_weight=1e6,
                               osqp_eps=1e-9)
        # only the terminal rows may soften; dynamics gaps stay hard.  The
        # state box is slack-relaxed (heavily penalized) so every QP stays
        # structurally feasible; Optimal still requires the box to hold.
        terminal_rows = (np.arange(10 * cfg.horizon,
                                   10 * cfg.horizon + len(TERMINAL_COORDS))
                         if cfg.terminal != "off" else None)
        boxed = (dyn.PHI, dyn.THETA, dyn.DPSI, dyn.DQD, dyn.DQR)
        soft_bounds = np.array([2 * cfg.horizon + 10 * k + coord
                                for k in range(cfg.horizon)
                                for coord in boxed])
        state_scale = np.array([1.0, 0.3, 0.3, 3.0, 3.0, 3.0,
                                5.0, 5.0, 100.0, 300.0])
        var_scale = np.concatenate([np.ones(2 * cfg.horizon),
                                    np.tile(state_scale, cfg.horizon)])
        problem = SqpProblem(2 * cfg.horizon + 10 * cfg.horizon, objective,
                             constraints=constraints,
                             bounds=self._bounds(x0s),
                             lin_ineq=self._input_ineq(x0s, r),
                             settings=settings,
                             soft_rows=terminal_rows,
                             soft_bounds=soft_bounds,
                             var_scale=var_scale)

        if warm and self._last is not None:
            v0, xs0 = self._last
            v_init = np.vstack([v0[1:], v0[-1:]])
            xs_init = np.vstack([x0s, xs0[2:], xs0[-1:]])
            z0 = self._pack(v_init, xs_init)
        else:
            v_cold, xs_cold = self.cold_start(x0s, r)
            z0 = self._pack(v_cold, xs_cold)

        soft = cfg.terminal == "penalty"
        res = problem.solve(z0, soft_constraints=soft)
        v, xs_var = self._unpack(res.z)
        xs = np.vstack([x0s, xs_var])
        u = (xs[:-1] - r) @ self._K.T + v
        term = xs[-1] - r
        terminal_residual = float(np.linalg.norm(
            term[list(TERMINAL_COORDS)])) if cfg.terminal != "off" else 0.0

        status = "Optimal"
        if res.status == "infeasible":
            status = "Infeasible"
        elif res.status != "optimal":
            status = "MaxIter"
        elif cfg.terminal != "off" and terminal_residual > cfg.tol_terminal:
            status = "MaxIter"
        elif res.soft_bound_violation > 1e-6:
            status = "MaxIter"          # state box not honored to tolerance

        sol = OcpSolution(
            v_seq=v, x_pred=xs, u_seq=u, status=status,
            objective=res.objective + const,
            stationarity=res.stationarity,
            terminal_residual=terminal_residual,
            iterations=res.iterations,
            used_penalty=res.used_soft_constraints,
            x0_violations=viol,
            first_action=np.clip(u[0], -cfg.tau_max, cfg.tau_max),
        )
        if status == "Optimal":
            self._last = (v, xs)
        else:
            self._last = None
        return sol

    def reset_warm_start(self):
        self._last = None


def solve_ocp(x0, ref, cfg, warm_solver=None):
    """One-shot solve; build (or reuse) an MpcSolver."""
    solver = warm_solver or MpcSolver(cfg)
    return solver.solve(x0, ref, warm=warm_solver is not None)


def evaluate_objective(cfg, ref, x_pred, u_seq):
    """Independent direct summation of the cost from a solution's trajectories."""
    r = reference_vector(ref)
    Q = np.asarray(cfg.Q)
    R = np.asarray(cfg.R)
    total = 0.0
    for k in range(x_pred.shape[0]):
        e = x_pred[k] - r
        total += float(e @ (Q * e))
    for k in range(u_seq.shape[0]):
        total += float(u_seq[k] @ (R * u_seq[k]))
    return total


def mpc_control(x, ref, cfg, warm_solver):
    """Apply-first-action helper with the pre-stabilizer fallback."""
    try:
        sol = warm_solver.solve(x, ref, warm=True)
    except (dyn.GimbalLockError, ValueError):
        sol = None
    if sol is None or sol.status == "Infeasible" or \
            sol.first_action is None or not np.isfinite(sol.first_action).all():
        frame = ref or SetpointFrame()
        x0s = shift_state(x, frame)
        u = cfg.gains.expand() @ (x0s - reference_vector(frame))
        return np.clip(u, -cfg.tau_max, cfg.tau_max), sol, True
    return sol.first_action, sol, False
