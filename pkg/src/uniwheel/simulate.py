"""Shared simulation loop: supported stepping, odometry, observation noise.

The ground support emulates the robot resting on its body edge in lying
poses (a unilateral spring-damper beyond the lie angle); without it a lying
robot could not spin up its reaction wheel before a stand-up.  Balancing
never reaches the support region (crash detection trips far earlier).
"""

from dataclasses import dataclass, field

import numpy as np

from . import dynamics as dyn
from .dynamics import integrators as itg

LIE_ANGLE_ROLL = float(np.deg2rad(70.0))
SUPPORT_K = 60.0
SUPPORT_D = 40.0


def lie_angle_pitch(params):
    """Two-wheel rest: the second wheel's rim touches at this pitch angle."""
    return float(np.arccos(-params.r_W / (params.l_W + params.r_W)))


@dataclass
class SimConfig:
    params: dyn.Params = field(default_factory=dyn.Params)
    tick: float = 1e-3
    support: bool = True
    lie_roll: float = LIE_ANGLE_ROLL
    lie_pitch: float | None = None     # default: two-wheel rest from params
    support_k: float = SUPPORT_K
    support_d: float = SUPPORT_D
    noise_std: np.ndarray | None = None   # per-channel observation noise
    seed: int = 0
    newton_tol: float = 1e-10
    newton_max_iter: int = 50


class Simulator:
    """Owns the true robot state; steps at a fixed tick with clamped torques."""

    def __init__(self, config=None, x0=None):
        self.config = config or SimConfig()
        self._p = self.config.params.as_array()
        self.x = np.zeros(10) if x0 is None else np.asarray(x0, float).copy()
        self.position = np.zeros(2)
        self.t = 0.0
        self._rng = np.random.default_rng(self.config.seed)
        self._noise = (None if self.config.noise_std is None
                       else np.asarray(self.config.noise_std, float))

    def reset(self, x0, position=(0.0, 0.0)):
        self.x = np.asarray(x0, float).copy()
        self.position = np.asarray(position, float).copy()
        self.t = 0.0

    def observe(self):
        """Measured state: ground truth plus optional additive Gaussian noise."""
        if self._noise is None:
            return self.x.copy()
        return self.x + self._noise * self._rng.standard_normal(10)

    def apply(self, u):
        """Advance one tick under torque u (clamped to the actuator limits).

        Returns the integrator status (STEP_OK / STEP_GIMBAL / ...).
        """
        cfg = self.config
        tau_d = min(max(float(u[0]), -dyn.TAU_MAX), dyn.TAU_MAX)
        tau_r = min(max(float(u[1]), -dyn.TAU_MAX), dyn.TAU_MAX)
        dq_d0, psi0 = self.x[dyn.DQD], self.x[dyn.PSI]
        if cfg.support:
            lie_r = cfg.lie_roll
            lie_p = (lie_angle_pitch(cfg.params) if cfg.lie_pitch is None
                     else cfg.lie_pitch)
        else:
            lie_r = lie_p = 1e9
        x_new, status, _, _ = itg.step_midpoint_sup(
            self.x, tau_d, tau_r, self._p, cfg.tick,
            cfg.newton_tol, cfg.newton_max_iter,
            lie_r, lie_p, cfg.support_k, cfg.support_d)
        if status == itg.STEP_NO_CONVERGENCE:
            # contact events can defeat the full-tick step; resolve finer
            x_new = self.x
            for _ in range(5):
                x_new, status, _, _ = itg.step_midpoint_sup(
                    x_new, tau_d, tau_r, self._p, cfg.tick / 5,
                    cfg.newton_tol, cfg.newton_max_iter,
                    lie_r, lie_p, cfg.support_k, cfg.support_d)
                if status != itg.STEP_OK:
                    break
        if status == itg.STEP_OK:
            # trapezoidal odometry update
            v0 = dyn.odometry(psi0, dq_d0, cfg.params.r_W)
            v1 = dyn.odometry(x_new[dyn.PSI], x_new[dyn.DQD], cfg.params.r_W)
            self.position += 0.5 * cfg.tick * (np.asarray(v0) + np.asarray(v1))
            self.x = x_new
            self.t += cfg.tick
        return status

    def shift(self, position_offset):
        """Apply a planar offset (contact switches during flips)."""
        self.position += np.asarray(position_offset, float)

    def override_state(self, x_new):
        self.x = np.asarray(x_new, float).copy()


def lying_state(side, params=None, sign=1.0, psi=0.0):
    """Resting pose: roll side on the body face, pitch side on both wheels."""
    if side == "pitch":
        angle = lie_angle_pitch(params or dyn.Params())
        return dyn.state(psi=psi, theta=sign * angle)
    if side == "roll":
        return dyn.state(psi=psi, phi=sign * LIE_ANGLE_ROLL)
    raise ValueError(f"unknown lying side {side!r}")


def settle(sim, max_time=3.0, rate_tol=0.05):
    """Run unactuated until the robot rests (used after crashes).

    Returns True when all body rates are below rate_tol with the support
    engaged or upright; False on timeout or integrator trouble.
    """
    n = int(round(max_time / sim.config.tick))
    for _ in range(n):
        status = sim.apply((0.0, 0.0))
        if status != itg.STEP_OK:
            return False
        rates = np.abs(sim.x[[dyn.DPSI, dyn.DPHI, dyn.DTHETA]])
        if rates.max() < rate_tol:
            return True
    return False


def run_supervised(sim, sup, supervise_fn, max_ticks, commands=None,
                   record=False, stop_mode=None):
    """Drive the supervisor against the simulator for up to max_ticks.

    commands: optional {tick: Command}.  Returns (sup, log) where log holds
    'states', 'torques', 'modes' arrays when record is set, plus 'fault' when
    the integrator failed.  Stops early when the supervisor reaches stop_mode
    (a set of Mode values) or crashes.
    """
    from .controllers.supervisor import Mode  # local import to avoid a cycle

    commands = commands or {}
    states, torques, modes = [], [], []
    fault = False
    for k in range(max_ticks):
        x = sim.observe()
        sup, u = supervise_fn(sup, x, commands.get(k))
        if sup.state_override is not None:
            sim.override_state(sup.state_override)
            if sup.position_offset is not None:
                sim.shift(sup.position_offset)
        else:
            status = sim.apply(u)
            if status != 0:
                fault = True
        if record:
            states.append(sim.x.copy())
            torques.append(np.asarray(u, float))
            modes.append(sup.mode)
        if fault or sup.mode == Mode.CRASHED:
            break
        if stop_mode is not None and sup.mode in stop_mode:
            break
    log = {"fault": fault, "ticks": k + 1}
    if record:
        log["states"] = np.asarray(states)
        log["torques"] = np.asarray(torques)
        log["modes"] = modes
    return sup, log
