from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dsrnet.topology import (
    NetworkTopology,
    build_lattice,
    compute_neighbors,
    min_neighbor_count,
    radius_adjacency,
    sample_disc,
)


def brute_force_neighbors(positions, radius):
    """Independent O(n^2) oracle: closed disc, self excluded."""
    n = len(positions)
    sets = []
    for i in range(n):
        ids = []
        for j in range(n):
            if i == j:
                continue
            d = np.hypot(
                positions[i][0] - positions[j][0],
                positions[i][1] - positions[j][1],
            )
            if 0.0 < d <= radius:
                ids.append(j)
        sets.append(ids)
    return sets


class TestBuildLattice:
    def test_grid_size_and_span(self):
        pos = build_lattice(25, 25, 1.0)
        assert pos.shape == (625, 2)
        assert pos.min() == 0.0
        assert pos[:, 0].max() == 24.0 and pos[:, 1].max() == 24.0

    def test_preset_geometry_has_225_agents(self):
        pos = build_lattice(15, 15, 1.0)
        assert pos.shape == (225, 2)
        assert pos[:, 0].max() == 14.0 and pos[:, 1].max() == 14.0

    def test_single_point(self):
        pos = build_lattice(1, 1, 5.0)
        assert pos.shape == (1, 2)
        assert np.array_equal(pos, [[0.0, 0.0]])

    def test_2x3_min_pairwise_distance(self):
        pos = build_lattice(2, 3, 2.0)
        assert pos.shape == (6, 2)
        deltas = pos[:, None, :] - pos[None, :, :]
        dist = np.hypot(deltas[..., 0], deltas[..., 1])
        dist[np.diag_indices(6)] = np.inf
        assert dist.min() == pytest.approx(2.0)

    def test_row_major_indexing(self):
        pos = build_lattice(3, 4, 0.5)
        # agent r*cols + c sits at (c*spacing, r*spacing)
        assert np.array_equal(pos[0], [0.0, 0.0])
        assert np.array_equal(pos[1], [0.5, 0.0])
        assert np.array_equal(pos[4], [0.0, 0.5])
        assert np.array_equal(pos[2 * 4 + 3], [1.5, 1.0])

    @pytest.mark.parametrize("rows,cols", [(0, 3), (3, 0), (-1, 2)])
    def test_rejects_empty_grid(self, rows, cols):
        with pytest.raises(ValueError):
            build_lattice(rows, cols, 1.0)

    def test_rejects_nonpositive_spacing(self):
        with pytest.raises(ValueError):
            build_lattice(2, 2, 0.0)


class TestSampleDisc:
    def test_empty(self):
        pos = sample_disc(0, 1.0, np.random.default_rng(0))
        assert pos.shape == (0, 2)

    def test_radii_bounded(self):
        pos = sample_disc(225, 25.0 / 3.0, np.random.default_rng(1))
        assert np.hypot(pos[:, 0], pos[:, 1]).max() <= 25.0 / 3.0

    def test_mean_radius_matches_quadrature_oracle(self):
        # E[r] for uniform-area sampling: integral of r_d*sqrt(u) du over
        # [0, 1] evaluates to 2*r_d/3.
        from scipy.integrate import quad

        oracle, _ = quad(np.sqrt, 0.0, 1.0)
        assert oracle == pytest.approx(2.0 / 3.0, abs=1e-9)
        pos = sample_disc(10_000, 1.0, np.random.default_rng(7))
        mean_radius = np.hypot(pos[:, 0], pos[:, 1]).mean()
        assert abs(mean_radius - oracle) <= 0.01

    def test_uniform_area_half_mass_inside_rd_over_sqrt2(self):
        r_d = 2.0
        pos = sample_disc(100_000, r_d, np.random.default_rng(3))
        fraction = np.mean(np.hypot(pos[:, 0], pos[:, 1]) <= r_d / np.sqrt(2.0))
        assert abs(fraction - 0.5) <= 0.01

    def test_literal_mode_confines_radii(self):
        r_d = 25.0 / 3.0
        pos = sample_disc(500, r_d, np.random.default_rng(5), mode="literal")
        assert np.hypot(pos[:, 0], pos[:, 1]).max() <= np.sqrt(r_d) + 1e-12

    def test_rejects_bad_arguments(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError):
            sample_disc(-1, 1.0, rng)
        with pytest.raises(ValueError):
            sample_disc(5, 0.0, rng)
        with pytest.raises(ValueError):
            sample_disc(5, 1.0, rng, mode="bogus")


class TestComputeNeighbors:
    def test_matches_brute_force_on_3x3(self):
        pos = build_lattice(3, 3, 1.0)
        got = compute_neighbors(pos, 1.2)
        want = brute_force_neighbors(pos.tolist(), 1.2)
        for g, w in zip(got, want):
            assert sorted(g.tolist()) == sorted(w)
        assert len(got[4]) == 4  # interior
        assert len(got[0]) == 2  # corner

    def test_lattice_census_and_edge_total(self):
        for rows, cols in [(15, 15), (3, 7), (25, 25)]:
            pos = build_lattice(rows, cols, 1.0)
            neighbors = compute_neighbors(pos, 1.2)
            degrees = np.array([len(ids) for ids in neighbors])
            counts = dict(zip(*np.unique(degrees, return_counts=True)))
            assert counts[2] == 4
            assert counts[3] == 2 * (rows - 2) + 2 * (cols - 2)
            assert counts[4] == (rows - 2) * (cols - 2)
            assert degrees.sum() == 2 * (2 * rows * cols - rows - cols)

    def test_distance_equal_to_radius_is_included(self):
        neighbors = compute_neighbors(np.array([[0.0, 0.0], [1.0, 0.0]]), 1.0)
        assert neighbors[0].tolist() == [1]
        assert neighbors[1].tolist() == [0]

    def test_radius_below_min_distance_gives_empty_sets(self):
        pos = build_lattice(4, 4, 1.0)
        assert all(len(ids) == 0 for ids in compute_neighbors(pos, 0.9))

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(ValueError):
            radius_adjacency(np.zeros((3, 2)), 0.0)

    @settings(max_examples=30, deadline=None)
    @given(
        arrays(
            float,
            st.tuples(st.integers(2, 12), st.just(2)),
            elements=st.floats(-5, 5, allow_nan=False),
        ),
        st.floats(0.1, 5.0),
    )
    def test_symmetry(self, positions, radius):
        neighbors = compute_neighbors(positions, radius)
        for i, ids in enumerate(neighbors):
            for j in ids:
                assert i in neighbors[j]


class TestNetworkTopology:
    def test_min_neighbor_count_on_lattice(self):
        topo = NetworkTopology.build(build_lattice(25, 25, 1.0), 1.2)
        assert min_neighbor_count(topo) == 2

    def test_min_neighbor_count_single_agent(self):
        topo = NetworkTopology.build(np.array([[0.0, 0.0]]), 1.2)
        assert min_neighbor_count(topo) == 0

    def test_min_neighbor_count_triangle(self):
        pos = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.8]])
        topo = NetworkTopology.build(pos, 100.0)
        assert min_neighbor_count(topo) == 2

    def test_rejects_leader_out_of_range(self):
        with pytest.raises(ValueError):
            NetworkTopology.build(np.zeros((3, 2)), 1.0, {3})

    def test_rejects_nonfinite_positions(self):
        pos = np.array([[0.0, 0.0], [np.nan, 1.0]])
        with pytest.raises(ValueError):
            NetworkTopology.build(pos, 1.0)
