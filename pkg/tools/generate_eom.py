"""Symbolic derivation of the unicycle equations of motion and code generation.

Derives the implicit dynamics

    M(phi, theta, p) @ [ddphi, ddtheta, ddpsi, ddqD, ddqR] + h(...) = 0

for the three-body system (drive wheel rolling on the ground, body, reaction
wheel) using Kane's method with the nonholonomic rolling contact eliminated
through the contact-velocity map.  Writes src/uniwheel/dynamics/_eom.py with
numba-compiled scalar functions for the mass matrix, bias/force vector, their
derivative blocks (state, input, and parameter Jacobians) and the energy
functions.

Run from the repository root:

    python3 tools/generate_eom.py

The generated module is committed; re-run only when the model changes.
"""

import sys
from pathlib import Path

import numpy as np
import sympy as sp
from sympy.printing.pycode import PythonCodePrinter

# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------

phi, theta, psi = sp.symbols("phi theta psi", real=True)
dphi, dtheta, dpsi, dqD, dqR = sp.symbols("dphi dtheta dpsi dqD dqR", real=True)
ddphi, ddtheta, ddpsi, ddqD, ddqR = sp.symbols(
    "ddphi ddtheta ddpsi ddqD ddqR", real=True
)
tauD, tauR = sp.symbols("tauD tauR", real=True)

mW, mB, IWoff, IWspin, IBx, IBy, IBz, rW, lW, C1, C2 = sp.symbols(
    "mW mB IWoff IWspin IBx IBy IBz rW lW C1 C2", positive=True
)
g_acc = sp.Symbol("g_acc", positive=True)

PARAM_SYMS = [mW, mB, IWoff, IWspin, IBx, IBy, IBz, rW, lW, C1, C2]

COORDS = [phi, theta, psi]
SPEEDS = [dphi, dtheta, dpsi, dqD, dqR]          # row ordering of the EOM
ACCELS = [ddphi, ddtheta, ddpsi, ddqD, ddqR]
QDOT = {phi: dphi, theta: dtheta, psi: dpsi}


def ddt(expr):
    """Total time derivative for expressions in (coords, speeds)."""
    out = sp.S.Zero
    for q in COORDS:
        out += sp.diff(expr, q) * QDOT[q]
    for u, du in zip(SPEEDS, ACCELS):
        out += sp.diff(expr, u) * du
    return out


def ddt_mat(m):
    return m.applyfunc(ddt)


# ---------------------------------------------------------------------------
# Kinematics (world-frame components, yaw-roll-pitch Euler angles)
# ---------------------------------------------------------------------------

zhat = sp.Matrix([0, 0, 1])
xp = sp.Matrix([sp.cos(psi), sp.sin(psi), 0])        # after yaw
yp = sp.Matrix([-sp.sin(psi), sp.cos(psi), 0])
ypp = sp.cos(phi) * yp + sp.sin(phi) * zhat          # after roll (= wheel axis)
zpp = -sp.sin(phi) * yp + sp.cos(phi) * zhat
xpp = xp
Bx = sp.cos(theta) * xpp - sp.sin(theta) * zpp       # body axes after pitch
By = ypp
Bz = sp.sin(theta) * xpp + sp.cos(theta) * zpp

# Angular velocities.  Wheel angles are measured relative to the body, so the
# drive wheel spins at dtheta + dqD about the axle and the reaction wheel at
# dqR about the body x axis.
w_frame = dpsi * zhat + dphi * xp
wB = w_frame + dtheta * ypp
wD = w_frame + (dtheta + dqD) * ypp
wR = wB + dqR * Bx

# Centres of mass relative to the ground contact point.  The rolling contact
# eliminates the contact-point translation: its velocity is rW*(dtheta+dqD)
# along the heading axis.
pD = rW * zpp
pB = pD + (lW / 2) * Bz
pR = pD + lW * Bz

vc = rW * (dtheta + dqD) * xp
vD = vc + ddt_mat(pD)
vB = vc + ddt_mat(pB)
vR = vc + ddt_mat(pR)

aD = ddt_mat(vD)
aB = ddt_mat(vB)
aR = ddt_mat(vR)
alD = ddt_mat(wD)
alB = ddt_mat(wB)
alR = ddt_mat(wR)

# World-frame inertia dyadics.  The wheels are symmetric about their spin
# axes, so their dyadics only depend on the carrier axes.
I3 = sp.eye(3)
ID = IWoff * I3 + (IWspin - IWoff) * (ypp * ypp.T)
IR = IWoff * I3 + (IWspin - IWoff) * (Bx * Bx.T)
IBdy = IBx * (Bx * Bx.T) + IBy * (By * By.T) + IBz * (Bz * Bz.T)

BODIES = [
    (mW, vD, aD, wD, alD, ID),
    (mB, vB, aB, wB, alB, IBdy),
    (mW, vR, aR, wR, alR, IR),
]

# Applied forces/torques.  Torques are internal motor pairs plus the yaw
# contact friction C1*tanh(C2*dpsi) acting about the vertical on the drive
# wheel.
fric = -C1 * sp.tanh(C2 * dpsi)
FORCES = [
    (vD, -mW * g_acc * zhat),
    (vB, -mB * g_acc * zhat),
    (vR, -mW * g_acc * zhat),
]
TORQUES = [
    (wD, tauD * ypp + fric * zhat),
    (wB, -tauD * ypp - tauR * Bx),
    (wR, tauR * Bx),
]


def partial(vec, u):
    return vec.applyfunc(lambda e: sp.diff(e, u))


print("assembling Kane equations ...")
residual = []
for u in SPEEDS:
    expr = sp.S.Zero
    for m, v, a, w, al, In in BODIES:
        hdot = In * al + w.cross(In * w)
        expr += partial(v, u).dot(m * a) + partial(w, u).dot(hdot)
    for v, f in FORCES:
        expr -= partial(v, u).dot(f)
    for w, t in TORQUES:
        expr -= partial(w, u).dot(t)
    residual.append(sp.expand(expr))
residual = sp.Matrix(residual)

M_full = residual.jacobian(sp.Matrix(ACCELS))
h_full = residual - M_full * sp.Matrix(ACCELS)
h_full = sp.expand(h_full)

# ---------------------------------------------------------------------------
# Verification before emitting code
# ---------------------------------------------------------------------------

print("verifying ...")
subs_zero = {s: 0 for s in SPEEDS + ACCELS + [phi, theta, psi, tauD, tauR]}
eq_res = residual.subs(subs_zero)
assert sp.simplify(eq_res) == sp.zeros(5, 1), "equilibrium residual nonzero"

rng = np.random.default_rng(0)
pvals = {
    mW: 0.13, mB: 0.43, IWoff: 3.3e-5, IWspin: 6.7e-5,
    IBx: 4.3e-4, IBy: 2.1e-4, IBz: 3.3e-4, rW: 0.032, lW: 0.066,
    C1: 0.01, C2: 100.0, g_acc: 9.81,
}
free = [phi, theta, psi, dphi, dtheta, dpsi, dqD, dqR,
        ddphi, ddtheta, ddpsi, ddqD, ddqR, tauD, tauR]
f_res = sp.lambdify(free, residual.subs(pvals), "numpy")
f_M = sp.lambdify([phi, theta, psi], M_full.subs(pvals), "numpy")

for _ in range(10):
    vals = rng.uniform(-1.2, 1.2, size=len(free))
    r1 = np.asarray(f_res(*vals), float).ravel()
    vals_shift = vals.copy()
    vals_shift[2] += rng.uniform(-3, 3)
    r2 = np.asarray(f_res(*vals_shift), float).ravel()
    assert np.allclose(r1, r2, rtol=0, atol=1e-9 * max(1.0, np.abs(r1).max())), \
        "residual depends on psi"
    Mv = np.asarray(f_M(vals[0], vals[1], vals[2]), float)
    assert np.allclose(Mv, Mv.T, atol=1e-12), "mass matrix not symmetric"
    assert np.linalg.eigvalsh(Mv).min() > 0, "mass matrix not positive definite"

# Energy balance: dE/dt equals the power of motor torques and yaw friction.
KE = sp.S.Zero
for m, v, a, w, al, In in BODIES:
    KE += m / 2 * v.dot(v) + sp.Rational(1, 2) * w.dot(In * w)
PE = g_acc * (2 * mW + mB) * rW * sp.cos(phi) \
    + g_acc * (mB * lW / 2 + mW * lW) * sp.cos(phi) * sp.cos(theta)

power = tauD * dqD + tauR * dqR + fric * wD.dot(zhat)
dE = ddt(KE + PE)
f_dE = sp.lambdify(free, dE.subs(pvals), "numpy")
f_pow = sp.lambdify(free, power.subs(pvals), "numpy")
f_hfull = sp.lambdify(free, h_full.subs(pvals), "numpy")
for _ in range(10):
    vals = rng.uniform(-1.0, 1.0, size=len(free))
    Mv = np.asarray(f_M(vals[0], vals[1], vals[2]), float)
    hv = np.asarray(f_hfull(*vals), float).ravel()
    acc = np.linalg.solve(Mv, -hv)
    vals[8:13] = acc
    assert abs(f_dE(*vals) - f_pow(*vals)) < 1e-10 * max(1.0, abs(f_dE(*vals))), \
        "energy balance violated"

print("verification passed")

# The dynamics are yaw-invariant (checked above); emit with psi = 0.
residual0 = residual.subs(psi, 0)
M0 = sp.trigsimp(M_full.subs(psi, 0))
h0 = h_full.applyfunc(lambda e: sp.expand(e).subs(psi, 0))
accel_syms = set(ACCELS)
assert not any(accel_syms & e.free_symbols for e in h0), \
    "bias vector contains acceleration symbols"
KE0 = KE.subs(psi, 0)

STATE_COLS = [phi, theta, dpsi, dphi, dtheta, dqD, dqR]
h_jac_state = h0.jacobian(sp.Matrix(STATE_COLS))
h_jac_input = h0.jacobian(sp.Matrix([tauD, tauR]))
M_dphi = M0.applyfunc(lambda e: sp.diff(e, phi))
M_dtheta = M0.applyfunc(lambda e: sp.diff(e, theta))
res_jac_params = residual0.jacobian(sp.Matrix(PARAM_SYMS))

# ---------------------------------------------------------------------------
# Code emission
# ---------------------------------------------------------------------------


class _Printer(PythonCodePrinter):
    def _print_Float(self, expr):
        return repr(float(expr))


_printer = _Printer()

PARAM_NAMES = ["mW", "mB", "IWoff", "IWspin", "IBx", "IBy", "IBz",
               "rW", "lW", "C1", "C2"]


def emit_function(name, args, exprs, shape, doc):
    """Emit one njit function computing `exprs` into an array of `shape`."""
    reps, reduced = sp.cse(exprs, optimizations="basic")
    lines = [f"@njit(cache=True)", f"def {name}({', '.join(args)}, p):"]
    lines.append(f'    """{doc}"""')
    used = set()
    for e in ([r for _, r in reps] + list(reduced)):
        used |= {s.name for s in e.free_symbols}
    unpack = [f"{n} = p[{i}]" for i, n in enumerate(PARAM_NAMES) if n in used]
    if unpack:
        lines.append("    " + "; ".join(unpack))
    if "g_acc" in used:
        lines.append("    g_acc = G_ACC")
    for lhs, rhs in reps:
        lines.append(f"    {lhs} = {_printer.doprint(rhs)}")
    if shape == ():
        lines.append(f"    return {_printer.doprint(reduced[0])}")
    else:
        lines.append(f"    out = np.empty({shape}, dtype=np.float64)")
        if len(shape) == 1:
            for i, e in enumerate(reduced):
                lines.append(f"    out[{i}] = {_printer.doprint(e)}")
        else:
            nrow, ncol = shape
            for k, e in enumerate(reduced):
                i, j = divmod(k, ncol)
                lines.append(f"    out[{i}, {j}] = {_printer.doprint(e)}")
        lines.append("    return out")
    return "\n".join(lines)


def flat(mat):
    return [mat[i, j] for i in range(mat.rows) for j in range(mat.cols)]


RATE_ARGS = ["dpsi", "dphi", "dtheta", "dqD", "dqR"]

blocks = [
    emit_function(
        "mass_matrix", ["phi", "theta"], flat(M0), (5, 5),
        "Generalized mass matrix, rows/cols ordered (phi, theta, psi, qD, qR)."),
    emit_function(
        "bias_vector", ["phi", "theta"] + RATE_ARGS + ["tauD", "tauR"],
        flat(h0), (5,),
        "Velocity, gravity, input and yaw-friction forces h with "
        "M @ accel + h = 0."),
    emit_function(
        "mass_matrix_dphi", ["phi", "theta"], flat(M_dphi), (5, 5),
        "d(mass_matrix)/d(phi)."),
    emit_function(
        "mass_matrix_dtheta", ["phi", "theta"], flat(M_dtheta), (5, 5),
        "d(mass_matrix)/d(theta)."),
    emit_function(
        "bias_jac_state", ["phi", "theta"] + RATE_ARGS + ["tauD", "tauR"],
        flat(h_jac_state), (5, 7),
        "d(bias_vector)/d(phi, theta, dpsi, dphi, dtheta, dqD, dqR)."),
    emit_function(
        "bias_jac_input", ["phi", "theta"], flat(h_jac_input), (5, 2),
        "d(bias_vector)/d(tauD, tauR)."),
    emit_function(
        "eom_jac_params",
        ["phi", "theta"] + RATE_ARGS
        + ["ddphi", "ddtheta", "ddpsi", "ddqD", "ddqR", "tauD", "tauR"],
        flat(res_jac_params), (5, 11),
        "d(M @ accel + h)/d(p) at fixed accel; columns follow PARAM_NAMES."),
    emit_function(
        "kinetic_energy", ["phi", "theta"] + RATE_ARGS, [KE0], (),
        "Total kinetic energy of the three bodies."),
    emit_function(
        "potential_energy", ["phi", "theta"], [PE], (),
        "Gravitational potential energy above the ground contact."),
]

header = '''"""Generated multibody dynamics kernels.  DO NOT EDIT.

Auto-generated by tools/generate_eom.py (Kane's method for the rolling
drive wheel + body + reaction wheel system).  Regenerate after model changes.
"""

import math

import numpy as np
from numba import njit

G_ACC = 9.81

PARAM_NAMES = {names}
N_PARAMS = 11

'''.format(names=PARAM_NAMES)

out_path = Path(__file__).resolve().parents[1] / "src" / "uniwheel" / "dynamics" / "_eom.py"
out_path.parent.mkdir(parents=True, exist_ok=True)
out_path.write_text(header + "\n\n\n".join(blocks) + "\n")
print(f"wrote {out_path} ({out_path.stat().st_size} bytes)")
