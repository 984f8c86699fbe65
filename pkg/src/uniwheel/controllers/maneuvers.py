"""Open-loop stand-up and flip command sequences.

Sequences are piecewise-constant torque phases tuned in simulation against
the default parameters (tools/tune_maneuvers.py) and shipped as versioned
CSV files with a JSON sidecar carrying the handover window and the parameter
hash they were tuned for.
"""

import csv
import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .. import dynamics as dyn

DATA_PACKAGE = "uniwheel.maneuvers"

HANDOVER_ANGLE = float(np.deg2rad(30.0))
HANDOVER_RATE = 12.0


@dataclass(frozen=True)
class ManeuverSequence:
    name: str
    torques: np.ndarray            # (n, 2) commanded torques per tick
    tick: float = 1e-3
    handover_angle: float = HANDOVER_ANGLE
    handover_rate: float = HANDOVER_RATE
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        t = np.asarray(self.torques, dtype=float)
        if t.ndim != 2 or t.shape[1] != 2:
            raise ValueError("torques must have shape (n, 2)")
        if np.abs(t).max() > dyn.TAU_MAX + 1e-12:
            raise ValueError("sequence exceeds the actuator torque limit")
        if not np.isfinite(t).all():
            raise ValueError("sequence contains non-finite torques")
        object.__setattr__(self, "torques", t)

    @property
    def duration(self):
        return self.torques.shape[0] * self.tick

    def handover_ok(self, x):
        return (abs(x[dyn.PHI]) <= self.handover_angle
                and abs(x[dyn.THETA]) <= self.handover_angle
                and abs(x[dyn.DPHI]) <= self.handover_rate
                and abs(x[dyn.DTHETA]) <= self.handover_rate)

    # -- persistence ---------------------------------------------------------
    def save(self, directory):
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        csv_path = directory / f"{self.name}.csv"
        with open(csv_path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["tick", "tauD", "tauR"])
            for k, (tau_d, tau_r) in enumerate(self.torques):
                writer.writerow([k, repr(float(tau_d)), repr(float(tau_r))])
        sidecar = {
            "name": self.name,
            "version": self.meta.get("version", 1),
            "tick": self.tick,
            "handover": {"angle_rad": self.handover_angle,
                         "rate_max": self.handover_rate},
            "params_hash": self.meta.get("params_hash", ""),
        }
        with open(directory / f"{self.name}.json", "w") as f:
            json.dump(sidecar, f, indent=2)
        return csv_path

    @classmethod
    def load(cls, csv_path):
        csv_path = Path(csv_path)
        rows = []
        with open(csv_path) as f:
            reader = csv.reader(f)
            header = next(reader)
            if header != ["tick", "tauD", "tauR"]:
                raise ValueError(f"unexpected maneuver header {header}")
            for row in reader:
                rows.append((float(row[1]), float(row[2])))
        sidecar_path = csv_path.with_suffix(".json")
        with open(sidecar_path) as f:
            sidecar = json.load(f)
        return cls(
            name=sidecar["name"],
            torques=np.asarray(rows, dtype=float),
            tick=float(sidecar["tick"]),
            handover_angle=float(sidecar["handover"]["angle_rad"]),
            handover_rate=float(sidecar["handover"]["rate_max"]),
            meta={"version": sidecar.get("version", 1),
                  "params_hash": sidecar.get("params_hash", "")},
        )


def params_hash(params):
    return hashlib.sha256(params.as_array().tobytes()).hexdigest()[:16]


def phases_to_torques(phases, tick=1e-3):
    """[(tau_d, tau_r, duration_s), ...] -> per-tick torque table."""
    chunks = []
    for tau_d, tau_r, duration in phases:
        n = int(round(duration / tick))
        chunks.append(np.tile([tau_d, tau_r], (n, 1)))
    return np.vstack(chunks) if chunks else np.zeros((0, 2))


def _load_packaged(name):
    root = resources.files(DATA_PACKAGE)
    return ManeuverSequence.load(Path(str(root / f"{name}.csv")))


def standup_pitch():
    """Drive-wheel stand-up from the pitch-side lying pose."""
    return _load_packaged("standup_pitch")


def standup_roll():
    """Reaction-wheel spin-up/brake stand-up from the roll-side lying pose."""
    return _load_packaged("standup_roll")


def half_flip():
    """Fast drive-wheel burst carrying the robot over onto the other wheel."""
    return _load_packaged("half_flip")
