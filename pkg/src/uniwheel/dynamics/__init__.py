"""Continuous- and discrete-time dynamics of the reaction-wheel unicycle.

The robot state is a plain 10-vector

    x = [psi, phi, theta, dpsi, dphi, dtheta, qD, qR, dqD, dqR]

(yaw, roll, pitch, their rates, wheel angles relative to the body, wheel
rates).  Actions are the two motor torques u = [tauD, tauR].  The equations
of motion live in the generated module ``_eom`` and are evaluated through the
numba kernels in ``integrators``.
"""

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _eom
from . import integrators
from .integrators import (
    PSI, PHI, THETA, DPSI, DPHI, DTHETA, QD, QR, DQD, DQR,
    GIMBAL_EPS, GIMBAL_LIMIT,
    STEP_OK, STEP_NO_CONVERGENCE, STEP_GIMBAL,
)

N_STATES = 10
N_INPUTS = 2

#: actuator torque limit (N*m) and wheel speed limit (rad/s, 8000 rpm motors)
TAU_MAX = 0.5
WHEEL_RATE_MAX = 8000.0 * 2.0 * math.pi / 60.0

STATE_NAMES = ("psi", "phi", "theta", "dpsi", "dphi", "dtheta",
               "qD", "qR", "dqD", "dqR")

PARAMS_FORMAT_VERSION = 1


class GimbalLockError(ValueError):
    """Roll angle too close to the +-pi/2 orientation singularity."""


class SingularMassMatrixError(ArithmeticError):
    def __init__(self, cond):
        super().__init__(f"mass matrix numerically singular (cond={cond:.3e})")
        self.cond = cond


class IntegrationError(ArithmeticError):
    def __init__(self, residual, iterations):
        super().__init__(
            f"implicit step did not converge: residual {residual:.3e} "
            f"after {iterations} Newton iterations")
        self.residual = residual
        self.iterations = iterations


@dataclass(frozen=True)
class Params:
    """Physical parameters (11 scalars total).

    Both wheels share mass, radius and inertia values by symmetry of the
    build; the body inertia is diagonal with three independent values.
    Defaults describe the 0.69 kg desk robot: 0.13 kg brass wheels (solid
    disc inertia), 0.43 kg body, 130 mm tall with 32 mm wheels.
    """

    m_W: float = 0.13            # wheel mass (each), kg
    m_B: float = 0.43            # body mass, kg
    I_W_off: float = 3.3e-5      # wheel inertia off the spin axis, kg m^2
    I_W_spin: float = 6.7e-5     # wheel inertia about the spin axis, kg m^2
    I_B: tuple = (4.3e-4, 2.1e-4, 3.3e-4)   # body principal inertia, kg m^2
    r_W: float = 0.032           # wheel radius, m
    l_W: float = 0.066           # axle-to-axle distance, m
    C1: float = 0.01             # yaw friction magnitude, N m
    C2: float = 100.0            # yaw friction slope, s/rad

    def __post_init__(self):
        a = self.as_array()
        if not np.isfinite(a).all():
            raise ValueError("parameters must be finite")
        if min(self.m_W, self.m_B, self.I_W_off, self.I_W_spin,
               *self.I_B, self.r_W, self.l_W) <= 0:
            raise ValueError("masses, inertias and lengths must be positive")
        if self.C1 < 0 or self.C2 <= 0:
            raise ValueError("friction constants require C1 >= 0, C2 > 0")

    def as_array(self):
        """Flat 11-vector in the order used by the generated kernels."""
        return np.array([self.m_W, self.m_B, self.I_W_off, self.I_W_spin,
                         self.I_B[0], self.I_B[1], self.I_B[2],
                         self.r_W, self.l_W, self.C1, self.C2], dtype=float)

    @classmethod
    def from_array(cls, a):
        a = np.asarray(a, dtype=float)
        if a.shape != (11,):
            raise ValueError(f"expected 11 parameters, got shape {a.shape}")
        return cls(m_W=a[0], m_B=a[1], I_W_off=a[2], I_W_spin=a[3],
                   I_B=(a[4], a[5], a[6]), r_W=a[7], l_W=a[8],
                   C1=a[9], C2=a[10])

    def to_json(self, path=None):
        obj = {
            "format_version": PARAMS_FORMAT_VERSION,
            "m_W": self.m_W, "m_B": self.m_B,
            "I_W_off": self.I_W_off, "I_W_spin": self.I_W_spin,
            "I_B": list(self.I_B),
            "r_W": self.r_W, "l_W": self.l_W,
            "C1": self.C1, "C2": self.C2,
        }
        text = json.dumps(obj, indent=2)
        if path is not None:
            with open(path, "w") as f:
                f.write(text + "\n")
        return text

    @classmethod
    def from_json(cls, source):
        if isinstance(source, (str, bytes)) and "{" in str(source):
            obj = json.loads(source)
        else:
            with open(source) as f:
                obj = json.load(f)
        version = obj.pop("format_version", None)
        if version != PARAMS_FORMAT_VERSION:
            raise ValueError(f"unsupported params format version {version!r}")
        obj["I_B"] = tuple(obj["I_B"])
        return cls(**obj)


PARAM_FIELD_NAMES = _eom.PARAM_NAMES


def state(**kwargs):
    """Build a state vector from named components, zeros elsewhere."""
    x = np.zeros(N_STATES)
    for name, value in kwargs.items():
        x[STATE_NAMES.index(name)] = value
    return x


def check_state(x):
    x = np.asarray(x, dtype=float)
    if x.shape != (N_STATES,):
        raise ValueError(f"state must have shape (10,), got {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError("state contains non-finite entries")
    if abs(x[PHI]) >= GIMBAL_LIMIT:
        raise GimbalLockError(
            f"|roll| = {abs(x[PHI]):.4f} rad is within {GIMBAL_EPS} of the "
            "pi/2 orientation singularity")
    return x


def _as_torques(u):
    u = np.asarray(u, dtype=float).reshape(2)
    return float(u[0]), float(u[1])


def eval_implicit_dynamics(x, accel, u, p):
    """Residual of M(phi,theta) @ accel + b + g + tau_psi.

    `accel` is ordered (phi'', theta'', psi'', qD'', qR'').  The residual is
    zero exactly when `accel` is the true acceleration.
    """
    x = check_state(x)
    accel = np.asarray(accel, dtype=float).reshape(5)
    tau_d, tau_r = _as_torques(u)
    return integrators.implicit_residual(x, accel, tau_d, tau_r, p.as_array())


def forward_dynamics(x, u, p):
    """Explicit dynamics xdot = f(x, u); solves the implicit form for accel."""
    x = check_state(x)
    tau_d, tau_r = _as_torques(u)
    parr = p.as_array()
    M = _eom.mass_matrix(x[PHI], x[THETA], parr)
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > 1e13:
        raise SingularMassMatrixError(cond)
    return integrators.xdot(x, tau_d, tau_r, parr)


def step(x, u, p, dt, method="midpoint", tol=1e-10, max_iter=50):
    """One implicit Runge-Kutta step of the continuous dynamics."""
    if dt <= 0:
        raise ValueError("step size must be positive")
    x = check_state(x)
    tau_d, tau_r = _as_torques(u)
    stepper = {"midpoint": integrators.step_midpoint,
               "radau3": integrators.step_radau3}[method]
    x_new, status, iters, res = stepper(x, tau_d, tau_r, p.as_array(),
                                        float(dt), tol, max_iter)
    if status == STEP_GIMBAL:
        raise GimbalLockError(
            f"roll reached the orientation singularity during a step "
            f"(|phi|={abs(x_new[PHI]):.4f})")
    if status != STEP_OK:
        raise IntegrationError(res, iters)
    return x_new


@dataclass(frozen=True)
class LinearModel:
    """Jacobians of the explicit dynamics at the upright equilibrium."""
    A: np.ndarray
    B: np.ndarray


def linearize(p):
    """Linearize about x = 0, u = 0 using the analytic derivative blocks."""
    x0 = np.zeros(N_STATES)
    A, B = integrators.xdot_jacobians(x0, 0.0, 0.0, p.as_array())
    if not (np.isfinite(A).all() and np.isfinite(B).all()):
        raise ArithmeticError("non-finite linearization")
    return LinearModel(A=A, B=B)


def odometry(psi, dq_d, r_w):
    """Planar contact velocity of the drive wheel from yaw and wheel rate."""
    v = r_w * dq_d
    return v * math.cos(psi), v * math.sin(psi)


def mechanical_energy(x, p):
    """Kinetic plus potential energy; conserved when u = 0 and C1 = 0."""
    x = np.asarray(x, dtype=float)
    parr = p.as_array()
    ke = _eom.kinetic_energy(x[PHI], x[THETA], x[DPSI], x[DPHI], x[DTHETA],
                             x[DQD], x[DQR], parr)
    pe = _eom.potential_energy(x[PHI], x[THETA], parr)
    return float(ke + pe)


def mass_matrix(x, p):
    """Generalized mass matrix at the state's roll/pitch angles."""
    x = np.asarray(x, dtype=float)
    return _eom.mass_matrix(x[PHI], x[THETA], p.as_array())
