"""Sparse SQP solver for the trajectory-fitting and optimal-control programs.

Solves
    min_z  f(z)    s.t.  c(z) = 0,  lb <= z <= ub,  lo <= G z <= hi

where the caller supplies f through value/gradient/Hessian callbacks (the
Hessian is a constant-sparsity positive-semidefinite approximation, exact for
quadratic objectives and Gauss-Newton J^T W J for least squares) and c through
value/Jacobian callbacks.  Each iteration solves one convex QP with OSQP and
globalizes with an L1-merit backtracking line search.

Two relaxations keep the subproblems well-posed:
  - designated equality rows (soft_rows) may carry L1 slack pairs, an exact
    penalty engaged when the hard set is unreachable;
  - designated variable bounds (soft_bounds) always carry L1 slacks, the
    usual treatment for state boxes in predictive control.
"""

from dataclasses import dataclass

import numpy as np
import osqp
import scipy.sparse as sp


@dataclass
class SqpResult:
    z: np.ndarray
    objective: float
    status: str                 # "optimal" | "max_iter" | "infeasible"
    iterations: int
    stationarity: float
    constraint_violation: float
    used_soft_constraints: bool = False
    qp_iterations: int = 0
    soft_bound_violation: float = 0.0


@dataclass
class SqpSettings:
    max_iter: int = 60
    tol_stationarity: float = 1e-6
    tol_constraint: float = 1e-8
    merit_penalty: float = 10.0
    line_search_max: int = 14
    armijo: float = 1e-4
    reg_init: float = 1e-9
    soft_constraint_weight: float = 1e4
    soft_bound_weight: float = 1e4
    osqp_eps: float = 1e-6
    osqp_max_iter: int = 20000


def _to_csc(mat):
    if sp.issparse(mat):
        return mat.tocsc()
    return sp.csc_matrix(mat)


class SqpProblem:
    """One nonlinear program; `solve` may be called repeatedly."""

    def __init__(self, n, objective, constraints=None, bounds=None,
                 lin_ineq=None, settings=None, soft_rows=None,
                 soft_bounds=None, var_scale=None):
        """objective(z) -> (f, grad, hess_csc); constraints(z) -> (c, C_csc).

        soft_rows: equality rows allowed to relax through L1 slacks when the
        hard problem is unreachable.  soft_bounds: variable indices whose box
        is always slack-relaxed (heavily penalized).  var_scale: diagonal
        variable scaling (characteristic magnitudes); decisive for the ADMM
        subproblem solver on badly mixed units.
        """
        self.n = n
        self.objective = objective
        self.constraints = constraints
        self.soft_rows = (None if soft_rows is None
                          else np.asarray(soft_rows, dtype=int))
        self.soft_bounds = (np.zeros(0, dtype=int) if soft_bounds is None
                            else np.asarray(soft_bounds, dtype=int))
        self.var_scale = (np.ones(n) if var_scale is None
                          else np.asarray(var_scale, dtype=float))
        self.settings = settings or SqpSettings()
        if bounds is None:
            self.lb = np.full(n, -np.inf)
            self.ub = np.full(n, np.inf)
        else:
            self.lb = np.asarray(bounds[0], dtype=float)
            self.ub = np.asarray(bounds[1], dtype=float)
        self._hard_mask = np.ones(n, dtype=bool)
        self._hard_mask[self.soft_bounds] = False
        if lin_ineq is None:
            self.G = sp.csc_matrix((0, n))
            self.g_lo = np.zeros(0)
            self.g_hi = np.zeros(0)
        else:
            self.G = _to_csc(lin_ineq[0])
            self.g_lo = np.asarray(lin_ineq[1], dtype=float)
            self.g_hi = np.asarray(lin_ineq[2], dtype=float)

    # -- single QP subproblem -------------------------------------------------
    def _solve_qp(self, H, grad, c, C, z, soft):
        s = self.settings
        n = self.n
        m_eq = len(c)
        reg = getattr(s, "reg", s.reg_init)

        blocks_P = [H + reg * sp.eye(n)]
        q_parts = [grad]
        n_aux = 0

        if soft and m_eq:
            soft_idx = (np.arange(m_eq) if self.soft_rows is None
                        else self.soft_rows[self.soft_rows < m_eq])
        else:
            soft_idx = np.zeros(0, dtype=int)
        m_soft = len(soft_idx)
        if m_soft:
            blocks_P.append(1e-10 * sp.eye(2 * m_soft))
            q_parts.append(np.full(2 * m_soft, s.soft_constraint_weight))
            n_aux += 2 * m_soft

        sb = self.soft_bounds
        n_sb = len(sb)
        if n_sb:
            blocks_P.append(1e-10 * sp.eye(2 * n_sb))
            q_parts.append(np.full(2 * n_sb, s.soft_bound_weight))
            n_aux += 2 * n_sb

        P = sp.block_diag(blocks_P, format="csc")
        q = np.concatenate(q_parts)
        n_tot = n + n_aux

        def widen(mat, col0, cols):
            """Place mat's columns into a (rows x n_tot) matrix at col0."""
            mat = _to_csc(mat)
            return sp.hstack([
                sp.csc_matrix((mat.shape[0], col0)), mat,
                sp.csc_matrix((mat.shape[0], n_tot - col0 - cols))],
                format="csc")

        rows_A = []
        lo_parts = []
        hi_parts = []
        col_t = n                      # equality slacks
        col_s = n + 2 * m_soft         # bound slacks

        if m_eq:
            C_full = widen(C, 0, n)
            if m_soft:
                S = sp.csc_matrix((np.ones(m_soft),
                                   (soft_idx, np.arange(m_soft))),
                                  shape=(m_eq, m_soft))
                C_full = C_full + widen(sp.hstack([S, -S]), col_t, 2 * m_soft)
            rows_A.append(C_full)
            lo_parts.append(-c)
            hi_parts.append(-c)
        if self.G.shape[0]:
            rows_A.append(widen(self.G, 0, n))
            gz = self.G @ z
            lo_parts.append(self.g_lo - gz)
            hi_parts.append(self.g_hi - gz)
        # hard variable bounds
        hard = np.flatnonzero(self._hard_mask)
        if len(hard):
            E = sp.csc_matrix((np.ones(len(hard)),
                               (np.arange(len(hard)), hard)),
                              shape=(len(hard), n))
            rows_A.append(widen(E, 0, n))
            lo_parts.append(self.lb[hard] - z[hard])
            hi_parts.append(self.ub[hard] - z[hard])
        # soft variable bounds: d_j - s+ + s- within the shifted box
        if n_sb:
            E = sp.csc_matrix((np.ones(n_sb), (np.arange(n_sb), sb)),
                              shape=(n_sb, n))
            row = widen(E, 0, n) + widen(
                sp.hstack([-sp.eye(n_sb), sp.eye(n_sb)]), col_s, 2 * n_sb)
            rows_A.append(row)
            lo_parts.append(self.lb[sb] - z[sb])
            hi_parts.append(self.ub[sb] - z[sb])
        # slack positivity
        if n_aux:
            rows_A.append(widen(sp.eye(n_aux), n, n_aux))
            lo_parts.append(np.zeros(n_aux))
            hi_parts.append(np.full(n_aux, np.inf))

        A = sp.vstack(rows_A, format="csc")
        lo = np.concatenate(lo_parts)
        hi = np.concatenate(hi_parts)

        # diagonal variable scaling (slack columns already unit scale)
        D = sp.diags(np.concatenate([self.var_scale,
                                     np.ones(n_aux)])).tocsc()
        P = (D @ P @ D).tocsc()
        q = D @ q
        A = (A @ D).tocsc()

        total_iter = 0
        status = "unsolved"
        for eps in (s.osqp_eps, max(1e-4, s.osqp_eps * 100)):
            solver = osqp.OSQP()
            solver.setup(P=P, q=q, A=A, l=lo, u=hi, verbose=False,
                         eps_abs=eps, eps_rel=eps,
                         max_iter=s.osqp_max_iter, polishing=True)
            res = solver.solve()
            status = res.info.status
            total_iter += res.info.iter
            if "solved" in status:
                y_eq = res.y[:m_eq] if m_eq else np.zeros(0)
                m_in = self.G.shape[0]
                y_in = res.y[m_eq:m_eq + m_in]
                return self.var_scale * res.x[:n], y_eq, y_in, status, total_iter
            # infeasibility certificates at tight tolerances are often
            # spurious for badly scaled subproblems; retry relaxed once
        return None, None, None, status, total_iter

    def solve(self, z0, soft_constraints=False):
        s = self.settings
        z = np.asarray(z0, dtype=float).copy()
        hard = self._hard_mask
        z[hard] = np.clip(z[hard], self.lb[hard], self.ub[hard])
        mu = s.merit_penalty
        s.reg = s.reg_init
        soft = soft_constraints
        used_soft = soft
        total_qp_iter = 0

        def ineq_violation(zv):
            total = 0.0
            if self.G.shape[0]:
                gz = self.G @ zv
                total += float(np.maximum(self.g_lo - gz, 0.0).sum()
                               + np.maximum(gz - self.g_hi, 0.0).sum())
            return total

        def soft_bound_violation(zv):
            sb = self.soft_bounds
            if not len(sb):
                return 0.0
            return float(np.maximum(self.lb[sb] - zv[sb], 0.0).sum()
                         + np.maximum(zv[sb] - self.ub[sb], 0.0).sum())

        def split_viol(cv):
            if not soft or self.soft_rows is None or len(cv) == 0:
                return np.abs(cv).sum(), 0.0
            mask = np.zeros(len(cv), dtype=bool)
            mask[self.soft_rows[self.soft_rows < len(cv)]] = True
            return np.abs(cv[~mask]).sum(), np.abs(cv[mask]).sum()

        def merit(fv, cv, zv):
            hard_l1, soft_l1 = split_viol(cv)
            return fv + mu * (hard_l1 + ineq_violation(zv)) \
                + s.soft_constraint_weight * soft_l1 \
                + s.soft_bound_weight * soft_bound_violation(zv)

        def hard_viol_max(cv):
            if len(cv) == 0:
                return 0.0
            if soft and self.soft_rows is not None:
                mask = np.ones(len(cv), dtype=bool)
                mask[self.soft_rows[self.soft_rows < len(cv)]] = False
                return np.abs(cv[mask]).max() if mask.any() else 0.0
            return np.abs(cv).max()

        def eval_constraints(zv, need_jac=True):
            if self.constraints is None:
                return np.zeros(0), sp.csc_matrix((0, self.n))
            try:
                return self.constraints(zv, need_jac)
            except TypeError:
                return self.constraints(zv)

        f, grad, H = self.objective(z)
        c, C = eval_constraints(z)

        stat = np.inf
        viol = hard_viol_max(c)
        f_prev = np.inf
        stall_count = 0
        for it in range(s.max_iter):
            d, y_eq, y_in, qp_status, qp_iter = self._solve_qp(
                H, grad, c, C, z, soft)
            total_qp_iter += qp_iter if qp_iter else 0
            if d is None:
                if "infeasible" in qp_status and not soft:
                    soft = True
                    used_soft = True
                    continue
                return SqpResult(z, f, "infeasible", it, stat, viol,
                                 used_soft, total_qp_iter,
                                 soft_bound_violation(z))

            m_eq = len(c)
            lag = grad + (C.T @ y_eq if m_eq else 0) \
                + (self.G.T @ y_in if self.G.shape[0] else 0)
            # bound multipliers absorb the defect at active bounds; measure
            # stationarity in scaled units on the free variables
            at_bound = (np.abs(z - self.lb) < 1e-9) | \
                       (np.abs(z - self.ub) < 1e-9)
            lag_scaled = self.var_scale * lag
            stat = (np.abs(lag_scaled[~at_bound]).max()
                    if (~at_bound).any() else 0.0)
            viol = hard_viol_max(c)
            grad_scale = np.abs(self.var_scale * grad).max()
            converged = stat <= s.tol_stationarity or \
                stat <= 1e-4 * max(1.0, grad_scale)
            if viol <= s.tol_constraint and \
                    (converged or stall_count >= 2):
                return SqpResult(z, f, "optimal", it, stat, viol,
                                 used_soft, total_qp_iter,
                                 soft_bound_violation(z))
            step = np.abs(d).max()
            if step <= 1e-14:
                status = "optimal" if viol <= s.tol_constraint else "max_iter"
                return SqpResult(z, f, status, it, stat, viol,
                                 used_soft, total_qp_iter,
                                 soft_bound_violation(z))

            if m_eq and len(y_eq):
                mu = max(mu, 2.0 * np.abs(y_eq).max() + 1.0)

            if abs(f_prev - f) <= 1e-9 * (1.0 + abs(f)):
                stall_count += 1
            else:
                stall_count = 0
            f_prev = f

            phi0 = merit(f, c, z)
            hard0, soft0 = split_viol(c)
            dphi = grad @ d - mu * (hard0 + ineq_violation(z)) \
                - s.soft_constraint_weight * soft0 \
                - s.soft_bound_weight * soft_bound_violation(z)
            alpha = 1.0
            improved = False
            for _ in range(s.line_search_max):
                z_try = z + alpha * d
                f_try, grad_try, H_try = self.objective(z_try)
                c_try, _unused = eval_constraints(z_try, need_jac=False)
                if np.isfinite(f_try) and \
                        merit(f_try, c_try, z_try) <= \
                        phi0 + s.armijo * alpha * min(dphi, 0.0):
                    z, f, grad, H = z_try, f_try, grad_try, H_try
                    c, C = eval_constraints(z_try)
                    improved = True
                    break
                alpha *= 0.5
            if not improved:
                s.reg = min(s.reg * 100 + 1e-8, 1e4)
                if s.reg >= 1e4:
                    return SqpResult(z, f, "max_iter", it, stat, viol,
                                     used_soft, total_qp_iter,
                                     soft_bound_violation(z))
            else:
                s.reg = max(s.reg / 10, s.reg_init)

        return SqpResult(z, f, "max_iter", s.max_iter, stat, viol,
                         used_soft, total_qp_iter, soft_bound_violation(z))


def quadratic_objective(P, q):
    """Objective callback for f(z) = 0.5 z^T P z + q^T z (constant Hessian)."""
    P = _to_csc(P)
    q = np.asarray(q, dtype=float)

    def objective(z):
        Pz = P @ z
        return 0.5 * float(z @ Pz) + float(q @ z), Pz + q, P

    return objective


def least_squares_objective(residual_fn):
    """Gauss-Newton callback from residual_fn(z) -> (r, J_sparse)."""

    def objective(z):
        r, J = residual_fn(z)
        J = _to_csc(J)
        return 0.5 * float(r @ r), J.T @ r, (J.T @ J).tocsc()

    return objective
