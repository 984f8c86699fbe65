"""Mode supervisor chaining maneuvers, balancing and driving.

Mode graph:  Idle -> {StandupPitch | StandupRoll | Flip} -> Balance -> Drive,
with crash detection dropping to Crashed from anywhere and a reset command
re-entering the stand-up appropriate for the lying side (the automatic
environment reset).  `supervise` is a pure function of (state, measurement,
command); the sim loop owning the robot applies the returned torques and any
state override (contact switch during flips).
"""

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .. import dynamics as dyn
from .feedback import GainMatrix, state_feedback
from .maneuvers import ManeuverSequence


class Mode(str, enum.Enum):
    IDLE = "Idle"
    STANDUP_PITCH = "StandupPitch"
    STANDUP_ROLL = "StandupRoll"
    FLIP = "Flip"
    BALANCE = "Balance"
    DRIVE = "Drive"
    CRASHED = "Crashed"


@dataclass(frozen=True)
class Command:
    kind: str                      # reset|standup|flip|balance|drive|setpoint
    side: str | None = None        # for standup: "pitch" | "roll"
    controller: object = None      # for drive: callable(x, ref) -> torques
    ref: object = None             # for setpoint: SetpointFrame-like
    ref_delta: np.ndarray | None = None   # for setpoint: x_ref increment


@dataclass(frozen=True)
class SupervisorConfig:
    crash_angle: float = float(np.deg2rad(45.0))
    abort_angle: float = float(np.deg2rad(85.0))
    # roll rests on the body face; pitch rests on both wheel rims
    roll_lie_min: float = float(np.deg2rad(45.0))
    roll_lie_max: float = float(np.deg2rad(85.0))
    pitch_lie_min: float = float(np.deg2rad(92.0))
    pitch_lie_max: float = float(np.deg2rad(122.0))
    seq_grace: float = 0.8         # settle time after a sequence, s
    tick: float = 1e-3
    r_W: float = 0.032
    l_W: float = 0.066


@dataclass(frozen=True)
class SupervisorState:
    mode: Mode = Mode.IDLE
    tick: int = 0
    gains: GainMatrix | None = None
    config: SupervisorConfig = field(default_factory=SupervisorConfig)
    sequences: dict = field(default_factory=dict)
    x_ref: np.ndarray = field(default_factory=lambda: np.zeros(10))
    seq: ManeuverSequence | None = None
    seq_index: int = 0
    seq_scale: tuple = (1.0, 1.0)
    drive_controller: object = None
    drive_ref: object = None
    flip_stage: int = 0
    flip_theta_switch: float = 0.0
    flip_phi_switch: float = 0.0
    # transient outputs, cleared every call
    state_override: np.ndarray | None = None
    position_offset: np.ndarray | None = None
    last_error: str | None = None
    saturated: bool = False


def make_supervisor(gains, sequences=None, config=None):
    """Fresh supervisor in Idle with balancing gains and maneuver table."""
    return SupervisorState(gains=gains, sequences=sequences or {},
                           config=config or SupervisorConfig())


def _rz(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])


def _rx(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])


def _ry(a):
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])


# new body axes in old body coordinates after landing on the other wheel
_SWAP = np.array([[0.0, 1.0, 0.0],
                  [1.0, 0.0, 0.0],
                  [0.0, 0.0, -1.0]])


def contact_switch_theta(r_w, l_w):
    """Pitch angle at which the second wheel's rim reaches the ground."""
    return float(np.arccos(-r_w / (l_w + r_w)))


def contact_switch_remap(x, r_w, l_w):
    """Re-ground the model on the other wheel mid-flip.

    Returns (x_new, planar_offset).  The new convention takes the former
    reaction wheel as the drive wheel; the heading rotates by ~90 degrees
    because the two axles are perpendicular.
    """
    x = np.asarray(x, dtype=float)
    psi, phi, theta = x[dyn.PSI], x[dyn.PHI], x[dyn.THETA]
    r_old = _rz(psi) @ _rx(phi) @ _ry(theta)
    r_new = r_old @ _SWAP

    phi_n = float(np.arcsin(np.clip(r_new[2, 1], -1.0, 1.0)))
    theta_n = float(np.arctan2(-r_new[2, 0], r_new[2, 2]))
    psi_n = float(np.arctan2(-r_new[0, 1], r_new[1, 1]))

    # body angular velocity is frame independent; re-express in the new rates
    ez = np.array([0.0, 0.0, 1.0])
    xp_old = _rz(psi) @ np.array([1.0, 0.0, 0.0])
    ypp_old = _rz(psi) @ _rx(phi) @ np.array([0.0, 1.0, 0.0])
    omega = x[dyn.DPSI] * ez + x[dyn.DPHI] * xp_old + x[dyn.DTHETA] * ypp_old
    xp_new = _rz(psi_n) @ np.array([1.0, 0.0, 0.0])
    ypp_new = _rz(psi_n) @ _rx(phi_n) @ np.array([0.0, 1.0, 0.0])
    basis = np.column_stack([ez, xp_new, ypp_new])
    dpsi_n, dphi_n, dtheta_n = np.linalg.solve(basis, omega)

    x_new = np.zeros(10)
    x_new[dyn.PSI] = psi_n
    x_new[dyn.PHI] = phi_n
    x_new[dyn.THETA] = theta_n
    x_new[dyn.DPSI] = dpsi_n
    x_new[dyn.DPHI] = dphi_n
    x_new[dyn.DTHETA] = dtheta_n
    x_new[dyn.QD] = x[dyn.QR]
    x_new[dyn.QR] = x[dyn.QD]
    x_new[dyn.DQD] = x[dyn.DQR]
    x_new[dyn.DQR] = x[dyn.DQD]

    # planar shift between old and new contact points
    zpp_old = _rz(psi) @ _rx(phi) @ ez
    bz_old = r_old @ ez
    zpp_new = _rz(psi_n) @ _rx(phi_n) @ ez
    new_centre = r_w * zpp_old + l_w * bz_old
    new_contact = new_centre - r_w * zpp_new
    return x_new, new_contact[:2].copy()


def _lying_side(x, cfg):
    """Which stand-up applies to the current pose, or None if not lying."""
    a_phi, a_th = abs(x[dyn.PHI]), abs(x[dyn.THETA])
    if cfg.pitch_lie_min <= a_th <= cfg.pitch_lie_max and a_phi <= np.deg2rad(30.0):
        return "pitch"
    if cfg.roll_lie_min <= a_phi <= cfg.roll_lie_max and a_th <= np.deg2rad(30.0):
        return "roll"
    return None


def _anchor_balance(s, x):
    x_ref = np.zeros(10)
    x_ref[dyn.QD] = x[dyn.QD]
    x_ref[dyn.QR] = x[dyn.QR]
    return replace(s, mode=Mode.BALANCE, x_ref=x_ref, seq=None, seq_index=0)


def _enter_standup(s, x, side):
    if _lying_side(x, s.config) != side:
        return replace(s, mode=Mode.CRASHED,
                       last_error=f"standup {side} from wrong pose")
    seq = s.sequences[f"standup_{side}"]
    mode = Mode.STANDUP_PITCH if side == "pitch" else Mode.STANDUP_ROLL
    # sequences are tuned from the negative-angle lying pose; mirror the
    # active torque channel when lying on the positive side
    if side == "pitch":
        scale = (1.0 if x[dyn.THETA] <= 0 else -1.0, 1.0)
    else:
        scale = (1.0, 1.0 if x[dyn.PHI] <= 0 else -1.0)
    return replace(s, mode=mode, seq=seq, seq_index=0, seq_scale=scale)


def _handle_command(s, x, command):
    cfg = s.config
    if command is None:
        return s
    kind = command.kind
    if kind == "reset":
        if s.mode in (Mode.CRASHED, Mode.IDLE):
            side = _lying_side(x, cfg)
            if side is not None:
                return _enter_standup(s, x, side)
            if max(abs(x[dyn.PHI]), abs(x[dyn.THETA])) <= np.deg2rad(30.0):
                return _anchor_balance(s, x)
            return replace(s, last_error="reset: not in a lying pose")
        return replace(s, last_error=f"reset rejected in {s.mode.value}")
    if kind == "standup":
        if command.side not in ("pitch", "roll"):
            return replace(s, last_error=f"unknown standup side {command.side!r}")
        if s.mode in (Mode.IDLE, Mode.CRASHED):
            return _enter_standup(s, x, command.side)
        return replace(s, mode=Mode.CRASHED,
                       last_error=f"standup commanded in {s.mode.value}")
    if kind == "flip":
        upright = max(abs(x[dyn.PHI]), abs(x[dyn.THETA])) <= np.deg2rad(10.0)
        if s.mode == Mode.BALANCE or (s.mode == Mode.IDLE and upright):
            return replace(s, mode=Mode.FLIP, seq=s.sequences["half_flip"],
                           seq_index=0, flip_stage=0, seq_scale=(1.0, 1.0))
        if s.mode == Mode.IDLE:
            return replace(s, mode=Mode.CRASHED,
                           last_error="flip commanded while not upright")
        return replace(s, last_error=f"flip rejected in {s.mode.value}")
    if kind == "balance":
        if s.mode in (Mode.DRIVE, Mode.BALANCE):
            return _anchor_balance(s, x)
        return replace(s, last_error=f"balance rejected in {s.mode.value}")
    if kind == "drive":
        if s.mode in (Mode.BALANCE, Mode.DRIVE) and command.controller is not None:
            return replace(s, mode=Mode.DRIVE,
                           drive_controller=command.controller,
                           drive_ref=command.ref)
        return replace(s, last_error=f"drive rejected in {s.mode.value}")
    if kind == "setpoint":
        if s.mode == Mode.BALANCE and command.ref_delta is not None:
            return replace(s, x_ref=s.x_ref + np.asarray(command.ref_delta))
        if s.mode == Mode.DRIVE:
            return replace(s, drive_ref=command.ref)
        return replace(s, last_error=f"setpoint rejected in {s.mode.value}")
    return replace(s, last_error=f"unknown command {kind!r}")


def supervise(s, x, command=None):
    """Advance the supervisor one tick.  Returns (new_state, torques)."""
    x = np.asarray(x, dtype=float)
    cfg = s.config
    s = replace(s, state_override=None, position_offset=None,
                last_error=None, saturated=False)
    s = _handle_command(s, x, command)
    u = np.zeros(2)

    if s.mode in (Mode.STANDUP_PITCH, Mode.STANDUP_ROLL):
        if s.seq.handover_ok(x):
            s = _anchor_balance(s, x)
        elif abs(x[dyn.PHI]) >= cfg.abort_angle:
            s = replace(s, mode=Mode.CRASHED, last_error="standup aborted")
        else:
            n_seq = s.seq.torques.shape[0]
            if s.seq_index < n_seq:
                u = s.seq.torques[s.seq_index] * np.asarray(s.seq_scale)
            elif (s.seq_index - n_seq) * cfg.tick > cfg.seq_grace:
                s = replace(s, mode=Mode.CRASHED,
                            last_error="standup handover timeout")
            s = replace(s, seq_index=s.seq_index + 1)

    if s.mode == Mode.FLIP:
        theta_sw = contact_switch_theta(cfg.r_W, cfg.l_W)
        if s.flip_stage == 0 and abs(x[dyn.THETA]) >= theta_sw:
            x_new, offset = contact_switch_remap(x, cfg.r_W, cfg.l_W)
            s = replace(s, flip_stage=1, state_override=x_new,
                        position_offset=offset,
                        flip_theta_switch=float(x[dyn.THETA]),
                        flip_phi_switch=float(x_new[dyn.PHI]),
                        seq_index=s.seq_index + 1)
            return s, u
        if s.flip_stage == 1 and s.seq.handover_ok(x):
            s = _anchor_balance(s, x)
        elif abs(x[dyn.PHI]) >= cfg.abort_angle:
            s = replace(s, mode=Mode.CRASHED, last_error="flip aborted")
        else:
            n_seq = s.seq.torques.shape[0] if s.seq is not None else 0
            if s.seq is not None and s.seq_index < n_seq:
                tau = s.seq.torques[s.seq_index]
                u = tau.copy() if s.flip_stage == 0 else tau[::-1].copy()
            elif s.mode == Mode.FLIP and \
                    (s.seq_index - n_seq) * cfg.tick > cfg.seq_grace:
                s = replace(s, mode=Mode.CRASHED,
                            last_error="flip handover timeout")
            if s.mode == Mode.FLIP:
                s = replace(s, seq_index=s.seq_index + 1)

    if s.mode == Mode.BALANCE:
        if max(abs(x[dyn.PHI]), abs(x[dyn.THETA])) > cfg.crash_angle:
            s = replace(s, mode=Mode.CRASHED)
        else:
            u, sat = state_feedback(s.gains, x, s.x_ref)
            s = replace(s, saturated=sat)

    if s.mode == Mode.DRIVE:
        if max(abs(x[dyn.PHI]), abs(x[dyn.THETA])) > cfg.crash_angle:
            s = replace(s, mode=Mode.CRASHED)
        else:
            u = np.clip(np.asarray(s.drive_controller(x, s.drive_ref), float),
                        -dyn.TAU_MAX, dyn.TAU_MAX)

    return replace(s, tick=s.tick + 1), u
