"""Grid-tune the open-loop stand-up and half-flip sequences in simulation.

Each maneuver is a few piecewise-constant torque phases.  Candidates are
scored by running the full supervised chain (sequence -> handover -> balance
with the default Riccati gains) on the nominal parameters; the best sequence
per maneuver is written to src/uniwheel/maneuvers/ as CSV + JSON sidecar.

Run from the repository root:  python3 tools/tune_maneuvers.py
"""

import itertools
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from uniwheel import dynamics as dyn
from uniwheel import simulate as sim_mod
from uniwheel.controllers import feedback as fb
from uniwheel.controllers import maneuvers as mv
from uniwheel.controllers import supervisor as sv

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "uniwheel" / "maneuvers"

PARAMS = dyn.Params()
GAINS = fb.lqr_init(dyn.linearize(PARAMS), params=PARAMS)
PHASH = mv.params_hash(PARAMS)


def make_seq(name, phases):
    torques = mv.phases_to_torques(phases)
    if torques.size and np.abs(torques).max() > dyn.TAU_MAX:
        return None
    return mv.ManeuverSequence(name=name, torques=torques,
                               meta={"version": 1, "params_hash": PHASH})


def run_chain(seq, side, sign, balance_hold=3.0, max_time=4.0):
    """Stand up from the lying pose and hold balance; score the outcome.

    Returns dict with success flag, handover tilt/rates, final tilt, ticks.
    """
    key = "half_flip" if side == "flip" else f"standup_{side}"
    sup = sv.make_supervisor(GAINS, sequences={key: seq})
    sim = sim_mod.Simulator(sim_mod.SimConfig(params=PARAMS))
    if side == "flip":
        sim.reset(np.zeros(10))
        cmd = sv.Command("flip")
    else:
        sim.reset(sim_mod.lying_state(side, params=PARAMS, sign=sign))
        cmd = sv.Command("standup", side=side)
    sup, log = sim_mod.run_supervised(
        sim, sup, sv.supervise, int(max_time * 1000), commands={0: cmd},
        record=True, stop_mode={sv.Mode.BALANCE})
    out = {"success": False, "handover": None, "sup": sup, "sim": sim}
    if sup.mode != sv.Mode.BALANCE:
        return out
    x_h = sim.x.copy()
    out["handover"] = x_h
    out["handover_tick"] = log["ticks"]
    # hold balance
    n_hold = int(balance_hold * 1000)
    sup, log2 = sim_mod.run_supervised(sim, sup, sv.supervise, n_hold)
    if sup.mode != sv.Mode.BALANCE or log2["fault"]:
        return out
    tilt = max(abs(sim.x[dyn.PHI]), abs(sim.x[dyn.THETA]))
    out["success"] = tilt < np.deg2rad(2.5)
    out["final_tilt"] = tilt
    out["rates_h"] = max(abs(x_h[dyn.DPHI]), abs(x_h[dyn.DTHETA]))
    out["wheel_h"] = max(abs(x_h[dyn.DQD]), abs(x_h[dyn.DQR]))
    return out


def score_standup(seq, side):
    """Lower is better; None when any sign fails."""
    total = 0.0
    for sign in (-1.0, 1.0):
        r = run_chain(seq, side, sign)
        if not r["success"]:
            return None
        total += r["rates_h"] + 2.0 * abs(r["handover"][dyn.PHI]) \
            + 2.0 * abs(r["handover"][dyn.THETA]) + 0.3 * seq.duration \
            + 0.01 * r["wheel_h"]
    return total


def tune_standup_pitch():
    best = None
    # torque capped below the flip's kick ("much higher torque" there)
    grid = itertools.product(
        (0.35, 0.40, 0.45),              # drive phase torque
        (0.08, 0.10, 0.12, 0.14, 0.16),  # drive duration
        (0.15, 0.30, 0.45),              # brake torque
        (0.04, 0.08, 0.12, 0.18),        # brake duration
    )
    for tau1, d1, tau2, d2 in grid:
        phases = [(-tau1, 0.0, d1), (tau2, 0.0, d2)]
        seq = make_seq("standup_pitch", phases)
        if seq is None:
            continue
        s = score_standup(seq, "pitch")
        if s is not None and (best is None or s < best[0]):
            best = (s, seq, phases)
            print(f"  pitch candidate {phases} score {s:.3f}")
    return best


def tune_standup_roll():
    best = None
    grid = itertools.product(
        (0.30, 0.40, 0.50),            # spin-up torque
        (0.06, 0.08, 0.10, 0.112),      # spin-up duration (rate cap bound)
        (0.30, 0.40, 0.50),            # brake torque
        (0.06, 0.10, 0.14, 0.20),       # brake duration
    )
    for tau1, d1, tau2, d2 in grid:
        # spin-up keeps the wheel under the 8000 rpm limit
        if tau1 / PARAMS.I_W_spin * d1 > dyn.WHEEL_RATE_MAX:
            continue
        seq = make_seq("standup_roll", [(0.0, tau1, d1), (0.0, -tau2, d2)])
        if seq is None:
            continue
        s = score_standup(seq, "roll")
        if s is not None and (best is None or s < best[0]):
            best = (s, seq, phases := [(0.0, tau1, d1), (0.0, -tau2, d2)])
            print(f"  roll candidate {phases} score {s:.3f}")
    return best


def tune_half_flip():
    # a short kick then coasting: gravity does most of the work, and the
    # coast length sets the sequence duration near the 160 ms target
    best = None
    # kick, coast, then a timed brake in the drive channel: before the
    # contact switch it slows the fall, after it (swapped onto the new
    # reaction wheel) it slows the rise
    grid = itertools.product(
        (0.008, 0.012, 0.018),                 # kick duration (tau 0.5)
        (0.04, 0.06, 0.08, 0.10),              # coast before brake
        (0.0, 0.15, 0.25, 0.35, 0.5),          # brake torque
        (0.01, 0.02, 0.03),                    # brake duration
        (0.15, 0.16, 0.18),                    # total duration
    )
    for d1, d2, tau3, d3, total in grid:
        pad = total - d1 - d2 - (d3 if tau3 else 0.0)
        if pad < 0:
            continue
        phases = [(-0.5, 0.0, d1), (0.0, 0.0, d2)]
        if tau3:
            phases.append((tau3, 0.0, d3))
        phases.append((0.0, 0.0, pad))
        seq = make_seq("half_flip", phases)
        if seq is None:
            continue
        r = run_chain(seq, "flip", 1.0)
        if not r["success"]:
            continue
        sup = r["sup"]
        travel = abs(sup.flip_theta_switch) + abs(
            sup.flip_phi_switch - r["sim"].x[dyn.PHI])
        if abs(travel - np.pi) > 0.1:
            continue
        s = r["rates_h"] + abs(total - 0.16) * 5.0
        if best is None or s < best[0]:
            best = (s, seq, phases)
            print(f"  flip candidate {phases} score {s:.3f} travel {travel:.3f}")
    return best


def main():
    t0 = time.time()
    print("tuning pitch stand-up ...")
    pitch = tune_standup_pitch()
    print("tuning roll stand-up ...")
    roll = tune_standup_roll()
    print("tuning half flip ...")
    flip = tune_half_flip()
    for name, best in [("standup_pitch", pitch), ("standup_roll", roll),
                       ("half_flip", flip)]:
        if best is None:
            print(f"!! no working sequence found for {name}")
            continue
        _, seq, phases = best
        path = seq.save(OUT_DIR)
        print(f"{name}: phases {phases} duration {seq.duration:.3f}s -> {path}")
    print(f"done in {time.time() - t0:.1f}s")


if __name__ == "__main__":
    main()
