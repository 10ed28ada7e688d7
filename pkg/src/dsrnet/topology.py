"""Agent placement and metric-radius neighborhoods.

Agents are points in the plane. Connectivity is metric: two agents are
neighbors when their Euclidean separation is positive and at most the
sensing radius (closed disc, self excluded). Leaders are ordinary agents
flagged as having direct access to the external information source; the
source itself is never a node of the network.

Positions are stored as an ``(n, 2)`` float array whose rows are the
per-agent ``(x, y)`` coordinates in meters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def build_lattice(rows: int, cols: int, spacing: float) -> np.ndarray:
    """Regular ``rows x cols`` grid of agent positions.

    Indexing is row-major: agent ``r * cols + c`` sits at
    ``(c * spacing, r * spacing)``. Row-major order is part of the on-disk
    contract, so trajectory columns stay comparable across runs.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must both be at least 1")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    rr, cc = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    positions = np.empty((rows * cols, 2), dtype=float)
    positions[:, 0] = cc.ravel() * spacing
    positions[:, 1] = rr.ravel() * spacing
    return positions


def sample_disc(
    n: int,
    disc_radius: float,
    rng: np.random.Generator,
    mode: str = "area",
) -> np.ndarray:
    """Random agent positions inside a disc centred on the origin.

    ``mode="area"`` (default) draws radii as ``disc_radius * sqrt(U(0,1))``,
    which is uniform in area and therefore uniform in agent density.
    ``mode="literal"`` draws ``sqrt(U(0, disc_radius))`` instead; it packs
    every agent within ``sqrt(disc_radius)`` of the centre and exists only
    as a comparison variant.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if disc_radius <= 0:
        raise ValueError("disc_radius must be positive")
    if mode not in ("area", "literal"):
        raise ValueError(f"unknown sampling mode: {mode!r}")
    u = rng.uniform(0.0, 1.0, size=n)
    if mode == "area":
        radii = disc_radius * np.sqrt(u)
    else:
        radii = np.sqrt(u * disc_radius)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    positions = np.empty((n, 2), dtype=float)
    positions[:, 0] = radii * np.cos(theta)
    positions[:, 1] = radii * np.sin(theta)
    return positions


def radius_adjacency(positions: np.ndarray, radius: float) -> np.ndarray:
    """Boolean adjacency matrix: True where ``0 < distance <= radius``.

    Comparison is on squared distances, so ties at exactly the radius are
    included and the relation is symmetric by construction.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    pos = np.asarray(positions, dtype=float)
    deltas = pos[:, None, :] - pos[None, :, :]
    dist2 = np.einsum("ijk,ijk->ij", deltas, deltas)
    adjacency = dist2 <= radius * radius
    np.fill_diagonal(adjacency, False)
    return adjacency


def compute_neighbors(positions: np.ndarray, radius: float) -> list[np.ndarray]:
    """Per-agent neighbor index sets under the closed sensing disc."""
    adjacency = radius_adjacency(positions, radius)
    return [np.flatnonzero(row) for row in adjacency]


@dataclass
class NetworkTopology:
    """Static snapshot of agent placements and their sensing graph.

    ``neighbors[i]`` holds the indices within the sensing radius of agent
    ``i`` (self excluded, symmetric). ``leader_ids`` marks the agents wired
    to the external source.
    """

    positions: np.ndarray
    neighbors: list[np.ndarray]
    sensing_radius: float
    leader_ids: frozenset[int]
    degrees: np.ndarray = field(init=False)

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        if self.positions.ndim != 2 or self.positions.shape[1] != 2:
            raise ValueError("positions must be an (n, 2) array")
        if not np.isfinite(self.positions).all():
            raise ValueError("positions must be finite")
        n = self.positions.shape[0]
        if len(self.neighbors) != n:
            raise ValueError("one neighbor set per agent required")
        self.leader_ids = frozenset(int(i) for i in self.leader_ids)
        if any(i < 0 or i >= n for i in self.leader_ids):
            raise ValueError("leader_ids must index existing agents")
        self.degrees = np.array([len(ids) for ids in self.neighbors], dtype=int)

    @property
    def n_agents(self) -> int:
        return self.positions.shape[0]

    @classmethod
    def build(
        cls,
        positions: np.ndarray,
        sensing_radius: float,
        leader_ids=(),
    ) -> "NetworkTopology":
        """Construct the sensing graph for the given placements."""
        positions = np.asarray(positions, dtype=float)
        neighbors = compute_neighbors(positions, sensing_radius)
        return cls(
            positions=positions,
            neighbors=neighbors,
            sensing_radius=float(sensing_radius),
            leader_ids=frozenset(leader_ids),
        )


def min_neighbor_count(topology: NetworkTopology) -> int:
    """Smallest neighborhood size over all agents (0 for an empty network).

    Flocking runs require this to be at least 2 at the start.
    """
    if topology.n_agents == 0:
        return 0
    return int(topology.degrees.min())
