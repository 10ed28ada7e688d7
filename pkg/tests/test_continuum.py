from __future__ import annotations

import numpy as np
import pytest

from dsrnet.continuum import (
    ContinuumParams,
    DiffusionState,
    SecondOrderState,
    diffusion_step,
    predicted_wave_speed,
    second_order_step,
    simulate_diffusion,
    simulate_second_order,
)
from dsrnet.dsr_core import DsrParams, InfoState, StepSource, dsr_step
from dsrnet.topology import NetworkTopology, build_lattice

STEP_TO_ONE = StepSource(0.0, 1.0, 0)


def lattice_topology(rows, cols, leaders=()):
    return NetworkTopology.build(build_lattice(rows, cols, 1.0), 1.2, leaders)


class TestPredictedWaveSpeed:
    def test_reference_point_is_exact(self):
        assert predicted_wave_speed(1.0, 100.0, 0.01) == 50.0

    def test_zero_alignment(self):
        assert predicted_wave_speed(1.0, 0.0, 0.01) == 0.0

    def test_doubled_spacing(self):
        assert predicted_wave_speed(2.0, 100.0, 0.01) == 100.0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            predicted_wave_speed(1.0, 100.0, 0.0)
        with pytest.raises(ValueError):
            predicted_wave_speed(1.0, -1.0, 0.01)


class TestParams:
    def test_rejects_zero_gain(self):
        with pytest.raises(ValueError):
            ContinuumParams(100.0, 0.0, 0.01, 1e-4, STEP_TO_ONE)

    def test_rejects_gain_of_one(self):
        with pytest.raises(ValueError):
            ContinuumParams(100.0, 1.0, 0.01, 1e-4, STEP_TO_ONE)

    def test_rejects_nonpositive_steps(self):
        with pytest.raises(ValueError):
            ContinuumParams(100.0, 0.5, 0.0, 1e-4, STEP_TO_ONE)
        with pytest.raises(ValueError):
            ContinuumParams(100.0, 0.5, 0.01, 0.0, STEP_TO_ONE)


class TestSecondOrderStep:
    def test_uniform_at_source_with_zero_rate_is_fixed_point(self):
        topo = lattice_topology(4, 4, {0})
        params = ContinuumParams(100.0, 0.96, 0.01, 1e-4, StepSource(0.6, 0.6, 0))
        state = SecondOrderState.from_initial(np.full(16, 0.6))
        out = second_order_step(state, topo, params)
        assert np.array_equal(out.value, state.value)
        # the discrepancy of the uniform state vanishes up to rounding in
        # the neighbor-mean weights, so the rate stays at rounding scale
        assert np.abs(out.rate).max() <= 1e-12

    def test_rate_starts_at_zero(self):
        state = SecondOrderState.from_initial(np.arange(3.0))
        assert np.array_equal(state.rate, np.zeros(3))

    def test_value_advances_with_pre_update_rate(self):
        topo = lattice_topology(3, 3, {0})
        params = ContinuumParams(100.0, 0.96, 0.01, 1e-3, STEP_TO_ONE)
        state = SecondOrderState.from_initial(np.zeros(9), np.full(9, 2.0))
        out = second_order_step(state, topo, params)
        assert out.value == pytest.approx(np.full(9, 2e-3))


class TestDiffusionStep:
    def test_chain_hand_arithmetic(self):
        positions = np.column_stack([np.arange(3.0), np.zeros(3)])
        topo = NetworkTopology.build(positions, 1.2)
        params = ContinuumParams(2.0, 0.5, 0.1, 0.1, StepSource(0.0, 0.0, 0))
        state = DiffusionState(values=np.array([0.0, 0.5, 1.0]))
        out = diffusion_step(state, topo, params)
        # discrepancies are (-0.5, 0, 0.5); update subtracts Ks*dt times them
        assert out.values == pytest.approx([0.1, 0.5, 0.9])

    def test_zero_alignment_is_identity(self):
        topo = lattice_topology(3, 3, {0})
        params = ContinuumParams(0.0, 0.5, 0.01, 0.01, STEP_TO_ONE)
        state = DiffusionState(values=np.linspace(0, 1, 9))
        out = diffusion_step(state, topo, params)
        assert np.array_equal(out.values, state.values)

    def test_matches_zero_gain_consensus_update_to_bit_tolerance(self):
        topo = lattice_topology(5, 5, {3})
        rng = np.random.default_rng(17)
        values = rng.uniform(0, 1, 25)
        continuum = ContinuumParams(100.0, 0.5, 0.01, 0.01, STEP_TO_ONE)
        consensus = DsrParams(100.0, 0.0, 0.01, STEP_TO_ONE)
        a = diffusion_step(DiffusionState(values=values.copy()), topo, continuum)
        b = dsr_step(InfoState.from_initial(values.copy()), topo, consensus)
        assert np.abs(a.values - b.current).max() <= 1e-15


class TestSimulators:
    def test_record_stride_and_final_row(self):
        topo = lattice_topology(3, 3, {0})
        params = ContinuumParams(100.0, 0.96, 0.01, 1e-4, STEP_TO_ONE)
        traj = simulate_second_order(topo, params, np.zeros(9), 105, record_every=10)
        assert traj.times[0] == 0.0
        assert traj.times[1] == pytest.approx(10e-4)
        assert traj.times[-1] == pytest.approx(105e-4)
        assert traj.values.shape == (12, 9)

    def test_divergence_truncates_and_flags(self):
        positions = np.column_stack([np.arange(3.0), np.zeros(3)])
        topo = NetworkTopology.build(positions, 1.2, {0})
        params = ContinuumParams(100.0, 0.5, 0.1, 0.1, STEP_TO_ONE)
        traj = simulate_diffusion(topo, params, np.zeros(3), 500)
        assert traj.diverged
        assert traj.diverged_step is not None
        assert traj.times[-1] == pytest.approx(traj.diverged_step * 0.1)

    def test_overdamped_limit_approaches_diffusion(self):
        # with a stable integrator step, shrinking the gain drives the
        # second-order trajectories onto the overdamped diffusion ones
        topo = lattice_topology(5, 5, {0})
        ks, dt, fine = 10.0, 0.01, 5e-5
        stride = round(dt / fine)
        diffusion = simulate_diffusion(
            topo, ContinuumParams(ks, 0.5, dt, dt, STEP_TO_ONE), np.zeros(25), 100
        )
        gaps = []
        for gain in (0.2, 0.1, 0.05, 0.01):
            wave = simulate_second_order(
                topo,
                ContinuumParams(ks, gain, dt, fine, STEP_TO_ONE),
                np.zeros(25),
                100 * stride,
                record_every=stride,
            )
            rows = min(len(wave.values), len(diffusion.values))
            gaps.append(np.abs(wave.values[:rows] - diffusion.values[:rows]).max())
        assert gaps[0] > gaps[1] > gaps[2] > gaps[3]

    def test_stability_is_monotone_in_integrator_step(self):
        topo = lattice_topology(15, 15, {16})
        n = 225

        def diverges(step, horizon=2.0):
            params = ContinuumParams(100.0, 0.96, 0.01, step, STEP_TO_ONE)
            traj = simulate_second_order(
                topo, params, np.zeros(n), int(horizon / step), record_every=100
            )
            return traj.diverged

        assert not diverges(1.246e-4)
        assert not diverges(1.246e-4 / 2.0)

    def test_rejects_bad_run_arguments(self):
        topo = lattice_topology(3, 3, {0})
        params = ContinuumParams(100.0, 0.96, 0.01, 1e-4, STEP_TO_ONE)
        with pytest.raises(ValueError):
            simulate_second_order(topo, params, np.zeros(9), -1)
        with pytest.raises(ValueError):
            simulate_second_order(topo, params, np.zeros(9), 10, record_every=0)
        with pytest.raises(ValueError):
            simulate_diffusion(topo, params, np.zeros(4), 10)
