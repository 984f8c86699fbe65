import numpy as np
import pytest

from uniwheel import dynamics as dyn
from uniwheel import simulate as sm
from uniwheel.controllers import (Command, GainMatrix, ManeuverSequence, Mode,
                                  ProjectionLostStabilityError, RiccatiError,
                                  contact_switch_remap, half_flip, lqr_init,
                                  make_supervisor, standup_pitch, standup_roll,
                                  state_feedback, supervise)
from uniwheel.controllers import maneuvers as mv
from uniwheel.controllers import supervisor as sv_mod

P = dyn.Params()
MODEL = dyn.linearize(P)


@pytest.fixture(scope="module")
def gains():
    return lqr_init(MODEL, params=P)


@pytest.fixture(scope="module")
def sequences():
    return {"standup_pitch": standup_pitch(), "standup_roll": standup_roll(),
            "half_flip": half_flip()}


def fresh_supervisor(gains, sequences):
    return make_supervisor(gains, sequences=dict(sequences))


def run_to_balance(sim, sup, first_command, max_ticks=4000, hold_ticks=1500):
    """Drive the chain to Balance and hold; returns (sup, reached_tick)."""
    reached = None
    cmds = {0: first_command}
    k = 0
    while k < max_ticks + hold_ticks:
        x = sim.observe()
        sup, u = supervise(sup, x, cmds.get(k))
        if sup.state_override is not None:
            sim.override_state(sup.state_override)
            if sup.position_offset is not None:
                sim.shift(sup.position_offset)
        else:
            assert sim.apply(u) == 0, f"integrator fault at tick {k}"
        if sup.mode == Mode.CRASHED:
            return sup, None
        if sup.mode == Mode.BALANCE and reached is None:
            reached = k
        if reached is not None and k - reached >= hold_ticks:
            break
        k += 1
    return sup, reached


class TestGainMatrix:
    def test_pattern_has_eight_nonzeros(self):
        g = GainMatrix(K_D=(1, 2, 3, 4), K_R=(5, 6, 7, 8))
        K = g.expand()
        assert (K != 0).sum() == 8
        assert K[0, dyn.THETA] == 1 and K[0, dyn.DTHETA] == 2
        assert K[0, dyn.QD] == 3 and K[0, dyn.DQD] == 4
        assert K[1, dyn.PHI] == 5 and K[1, dyn.DPHI] == 6
        assert K[1, dyn.QR] == 7 and K[1, dyn.DQR] == 8
        # pitch row never reads roll states and vice versa
        assert np.all(K[0, [dyn.PHI, dyn.DPHI, dyn.QR, dyn.DQR]] == 0)
        assert np.all(K[1, [dyn.THETA, dyn.DTHETA, dyn.QD, dyn.DQD]] == 0)

    def test_vector_round_trip(self):
        v = np.arange(8.0)
        assert np.allclose(GainMatrix.from_vector(v).as_vector(), v)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            GainMatrix(K_D=(np.nan, 0, 0, 0), K_R=(0, 0, 0, 0))


class TestStateFeedback:
    def test_zero_state(self):
        g = GainMatrix(K_D=(1, 2, 3, 4), K_R=(5, 6, 7, 8))
        u, sat = state_feedback(g, np.zeros(10))
        assert np.all(u == 0) and not sat

    def test_decoupled_channels(self):
        g = GainMatrix(K_D=(0.5, 0.5, 0.5, 0.5), K_R=(0.5, 0.5, 0.5, 0.5))
        x = dyn.state(theta=0.1, dtheta=0.2, qD=0.1, dqD=0.2)   # pitch only
        u, _ = state_feedback(g, x)
        assert u[1] == 0.0 and u[0] != 0.0

    def test_single_entry_product(self):
        g = GainMatrix(K_D=(1.0, 0, 0, 0), K_R=(0, 0, 0, 0))
        u, sat = state_feedback(g, dyn.state(theta=0.2))
        assert u[0] == pytest.approx(0.2) and not sat

    def test_saturation_flagged(self):
        g = GainMatrix(K_D=(100.0, 0, 0, 0), K_R=(0, 0, 0, 0))
        u, sat = state_feedback(g, dyn.state(theta=0.2))
        assert u[0] == dyn.TAU_MAX and sat


class TestLqrInit:
    def test_closed_loop_hurwitz_on_controllable_subspace(self, gains):
        from uniwheel.controllers.feedback import controllable_subspace
        V, rank, _ = controllable_subspace(MODEL.A, MODEL.B)
        K = gains.expand()
        closed = V.T @ (MODEL.A + MODEL.B @ K) @ V
        assert np.linalg.eigvals(closed).real.max() < 0

    def test_projection_preserves_pattern(self, gains):
        K = gains.expand()
        assert (K != 0).sum() == 8

    def test_heavier_input_weight_softens_torques(self):
        g1 = lqr_init(MODEL, R=np.array([1.0, 1.0]), params=P, verify=False)
        g2 = lqr_init(MODEL, R=np.array([4.0, 4.0]), params=P, verify=False)
        # small enough that neither variant saturates
        x0 = dyn.state(theta=0.004, dtheta=0.01)
        u1, _ = state_feedback(g1, x0)
        u2, _ = state_feedback(g2, x0)
        assert np.abs(u2).max() < np.abs(u1).max()

    def test_stabilizes_five_degree_offsets(self, gains):
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(dyn.state(phi=np.deg2rad(5), theta=np.deg2rad(-5)))
        sup = make_supervisor(gains)
        sup, reached = run_to_balance(sim, sup, Command("reset"),
                                      max_ticks=10, hold_ticks=2500)
        assert reached is not None
        tilt = max(abs(sim.x[dyn.PHI]), abs(sim.x[dyn.THETA]))
        assert tilt < np.deg2rad(2.0)

    def test_riccati_failure_reported(self):
        broken = dyn.LinearModel(A=MODEL.A, B=np.zeros((10, 2)))
        with pytest.raises((RiccatiError, ProjectionLostStabilityError)):
            lqr_init(broken, params=P)


class TestManeuverSequences:
    def test_round_trip(self, tmp_path):
        seq = ManeuverSequence(name="demo",
                               torques=np.array([[0.1, -0.2], [0.0, 0.3]]),
                               meta={"version": 3, "params_hash": "abc"})
        seq.save(tmp_path)
        loaded = ManeuverSequence.load(tmp_path / "demo.csv")
        assert np.allclose(loaded.torques, seq.torques)
        assert loaded.meta["version"] == 3
        assert loaded.handover_angle == seq.handover_angle

    def test_rejects_over_torque(self):
        with pytest.raises(ValueError):
            ManeuverSequence(name="bad", torques=np.array([[0.6, 0.0]]))

    def test_packaged_sequences_within_limits(self, sequences):
        for name, seq in sequences.items():
            assert np.abs(seq.torques).max() <= dyn.TAU_MAX
            assert seq.duration < 1.0
            assert seq.meta["params_hash"], name

    def test_roll_spinup_then_brake(self, sequences):
        # reaction wheel spins up monotonically, then the brake reverses sign
        seq = sequences["standup_roll"]
        tau_r = seq.torques[:, 1]
        active = np.flatnonzero(tau_r)
        first = tau_r[active[0]]
        flips = np.flatnonzero(np.sign(tau_r[active]) != np.sign(first))
        assert len(flips) > 0, "no brake phase"
        # simulate: wheel speed rises monotonically during spin-up
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(sm.lying_state("roll", params=P, sign=-1.0))
        speeds = []
        for tau in seq.torques[:active[0] + flips[0]]:
            sim.apply(tau)
            speeds.append(sim.x[dyn.DQR])
        speeds = np.asarray(speeds)
        assert np.all(np.diff(speeds) >= -1e-9)
        assert np.abs(speeds).max() < dyn.WHEEL_RATE_MAX

    def test_flip_peak_torque_exceeds_pitch_standup(self, sequences):
        flip_peak = np.abs(sequences["half_flip"].torques[:, 0]).max()
        standup_peak = np.abs(sequences["standup_pitch"].torques[:, 0]).max()
        assert flip_peak > standup_peak

    def test_flip_duration_near_160ms(self, sequences):
        assert 0.16 * 0.75 <= sequences["half_flip"].duration <= 0.16 * 1.25


class TestStandups:
    @pytest.mark.parametrize("side,sign", [("pitch", -1.0), ("pitch", 1.0),
                                           ("roll", -1.0), ("roll", 1.0)])
    def test_standup_reaches_balance(self, gains, sequences, side, sign):
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(sm.lying_state(side, params=P, sign=sign))
        sup = fresh_supervisor(gains, sequences)
        sup, reached = run_to_balance(sim, sup, Command("standup", side=side),
                                      hold_ticks=3000)
        assert reached is not None and reached < 3000
        assert max(abs(sim.x[dyn.PHI]), abs(sim.x[dyn.THETA])) < np.deg2rad(3)

    def test_window_entry_before_sequence_end_plus_grace(self, gains, sequences):
        seq = sequences["standup_pitch"]
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(sm.lying_state("pitch", params=P, sign=-1.0))
        sup = fresh_supervisor(gains, sequences)
        sup, reached = run_to_balance(sim, sup, Command("standup", side="pitch"),
                                      hold_ticks=0)
        budget = seq.torques.shape[0] + int(sup.config.seq_grace * 1000)
        assert reached is not None and reached <= budget

    def test_standup_from_upright_aborts(self, gains, sequences):
        sup = fresh_supervisor(gains, sequences)
        sup, u = supervise(sup, np.zeros(10), Command("standup", side="pitch"))
        assert sup.mode == Mode.CRASHED
        assert "wrong pose" in sup.last_error


class TestHalfFlip:
    def test_flip_traverses_pi_and_lands_balanced(self, gains, sequences):
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(np.zeros(10))
        sup = fresh_supervisor(gains, sequences)
        sup, reached = run_to_balance(sim, sup, Command("flip"),
                                      hold_ticks=2000)
        assert reached is not None
        travel = abs(sup.flip_theta_switch) + abs(sup.flip_phi_switch
                                                  - sim.x[dyn.PHI])
        assert abs(travel - np.pi) < 0.1
        assert max(abs(sim.x[dyn.PHI]), abs(sim.x[dyn.THETA])) < np.deg2rad(3)

    def test_heading_rotates_quarter_turn(self, gains, sequences):
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(np.zeros(10))
        sup = fresh_supervisor(gains, sequences)
        sup, reached = run_to_balance(sim, sup, Command("flip"), hold_ticks=500)
        assert reached is not None
        assert abs(abs(sim.x[dyn.PSI]) - np.pi / 2) < 0.15


class TestContactSwitchRemap:
    def test_preserves_physical_angular_velocity(self):
        rng = np.random.default_rng(4)
        for _ in range(25):
            x = np.zeros(10)
            x[dyn.PSI] = rng.uniform(-np.pi, np.pi)
            x[dyn.PHI] = rng.uniform(-0.2, 0.2)
            x[dyn.THETA] = rng.uniform(1.85, 2.0) * rng.choice([-1, 1])
            x[3:6] = rng.uniform(-20, 20, 3)
            x[6:] = rng.uniform(-30, 30, 4)
            x_new, _ = contact_switch_remap(x, P.r_W, P.l_W)

            def omega_world(s):
                ez = np.array([0.0, 0, 1])
                xp = sv_mod._rz(s[dyn.PSI]) @ np.array([1.0, 0, 0])
                ypp = sv_mod._rz(s[dyn.PSI]) @ sv_mod._rx(s[dyn.PHI]) @ \
                    np.array([0.0, 1, 0])
                return s[dyn.DPSI] * ez + s[dyn.DPHI] * xp + s[dyn.DTHETA] * ypp

            assert np.allclose(omega_world(x), omega_world(x_new), atol=1e-9)
            assert x_new[dyn.DQD] == x[dyn.DQR]
            assert x_new[dyn.DQR] == x[dyn.DQD]
            assert abs(x_new[dyn.PHI]) < dyn.GIMBAL_LIMIT

    def test_orientation_equivalent(self):
        x = np.zeros(10)
        x[dyn.THETA] = 1.92
        x_new, _ = contact_switch_remap(x, P.r_W, P.l_W)
        r_old = sv_mod._rz(x[dyn.PSI]) @ sv_mod._rx(x[dyn.PHI]) @ \
            sv_mod._ry(x[dyn.THETA])
        r_new = sv_mod._rz(x_new[dyn.PSI]) @ sv_mod._rx(x_new[dyn.PHI]) @ \
            sv_mod._ry(x_new[dyn.THETA])
        assert np.allclose(r_old @ sv_mod._SWAP, r_new, atol=1e-12)


class TestSupervisor:
    def test_balance_crash_guard(self, gains):
        sup = make_supervisor(gains)
        sup = sv_mod.SupervisorState(mode=Mode.BALANCE, gains=gains,
                                     config=sup.config)
        sup, u = supervise(sup, dyn.state(phi=np.deg2rad(50)))
        assert sup.mode == Mode.CRASHED
        assert np.all(u == 0)

    def test_reset_dispatch_roll_side(self, gains, sequences):
        sup = fresh_supervisor(gains, sequences)
        sup = sv_mod.SupervisorState(mode=Mode.CRASHED, gains=gains,
                                     config=sup.config, sequences=sup.sequences)
        x = sm.lying_state("roll", params=P, sign=1.0)
        sup, _ = supervise(sup, x, Command("reset"))
        assert sup.mode == Mode.STANDUP_ROLL

    def test_reset_dispatch_pitch_side(self, gains, sequences):
        sup = fresh_supervisor(gains, sequences)
        sup = sv_mod.SupervisorState(mode=Mode.CRASHED, gains=gains,
                                     config=sup.config, sequences=sup.sequences)
        x = sm.lying_state("pitch", params=P, sign=-1.0)
        sup, _ = supervise(sup, x, Command("reset"))
        assert sup.mode == Mode.STANDUP_PITCH

    def test_unknown_command_rejected_state_unchanged(self, gains):
        sup = make_supervisor(gains)
        sup2, u = supervise(sup, np.zeros(10), Command("warp"))
        assert sup2.mode == sup.mode
        assert "unknown command" in sup2.last_error
        assert np.all(u == 0)

    def test_torques_always_within_limits(self, gains, sequences):
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(sm.lying_state("roll", params=P, sign=1.0))
        sup = fresh_supervisor(gains, sequences)
        cmds = {0: Command("reset")}
        for k in range(3000):
            sup, u = supervise(sup, sim.observe(), cmds.get(k))
            assert np.abs(u).max() <= dyn.TAU_MAX + 1e-12
            if sup.state_override is not None:
                sim.override_state(sup.state_override)
            else:
                sim.apply(u)
            if sup.mode == Mode.CRASHED:
                break

    def test_determinism(self, gains, sequences):
        def run():
            sim = sm.Simulator(sm.SimConfig(params=P))
            sim.reset(sm.lying_state("pitch", params=P, sign=1.0))
            sup = fresh_supervisor(gains, sequences)
            out = []
            cmds = {0: Command("standup", side="pitch")}
            for k in range(1500):
                sup, u = supervise(sup, sim.observe(), cmds.get(k))
                sim.apply(u)
                out.append((sup.mode, u[0], u[1], sim.x.tobytes()))
            return out

        assert run() == run()

    def test_full_reset_chain_under_three_seconds(self, gains, sequences):
        # crash from balance, settle, reset -> standup -> balance
        sim = sm.Simulator(sm.SimConfig(params=P))
        sim.reset(dyn.state(phi=np.deg2rad(46), dphi=2.0))
        sup = fresh_supervisor(gains, sequences)
        sup = sv_mod.SupervisorState(mode=Mode.BALANCE, gains=gains,
                                     config=sup.config, sequences=sup.sequences)
        sup, _ = supervise(sup, sim.observe())
        assert sup.mode == Mode.CRASHED
        assert sm.settle(sim)
        start = sim.t
        sup, reached = run_to_balance(sim, sup, Command("reset"),
                                      hold_ticks=500)
        assert reached is not None
        assert sim.t - start < 3.0 + 0.5  # includes the 0.5 s hold
