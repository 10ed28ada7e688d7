"""Constant-speed planar flocking driven by heading consensus.

The transferred information is each agent's heading. Every step recomputes
the metric neighborhood from current positions, applies one DSR heading
update, then moves every agent one interval at fixed speed along its new
heading. Headings are kept as plain reals rather than wrapped angles: the
turn maneuvers studied here stay far from any branch cut, and wrapping
would corrupt the discrepancy averages.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dsr_core import (
    DsrParams,
    InfoState,
    StepSource,
    detect_divergence,
    dsr_step,
)
from .topology import NetworkTopology, min_neighbor_count


@dataclass(frozen=True)
class FlockParams:
    """Maneuver definition: kinematics, heading dynamics, and source switch.

    The heading source emits ``initial_heading`` before ``switch_step`` and
    ``target_heading`` from it onward; whatever source the nested DSR
    parameters carry is replaced by that schedule. All agents start with
    heading ``initial_heading``.
    """

    speed: float
    dsr: DsrParams
    sensing_radius: float
    initial_heading: float = -np.pi / 4
    target_heading: float = np.pi / 2
    switch_step: int = 0
    n_steps: int = 400

    def __post_init__(self):
        if self.speed <= 0:
            raise ValueError("speed must be positive")
        if self.sensing_radius <= 0:
            raise ValueError("sensing_radius must be positive")
        if self.n_steps < 0:
            raise ValueError("n_steps must be nonnegative")


@dataclass
class FlockTrajectory:
    """Recorded maneuver: positions [rows, n, 2] and headings [rows, n]."""

    times: np.ndarray
    positions: np.ndarray
    headings: np.ndarray
    params: FlockParams
    leader_ids: tuple[int, ...]
    diverged: bool = False
    diverged_step: int | None = None

    @property
    def n_agents(self) -> int:
        return self.headings.shape[1]


def kinematic_step(
    positions: np.ndarray,
    headings: np.ndarray,
    speed: float,
    dt: float,
) -> np.ndarray:
    """Advance positions one interval at fixed speed along each heading."""
    if len(positions) != len(headings):
        raise ValueError("positions and headings must have equal length")
    step = speed * dt
    moved = np.empty_like(positions, dtype=float)
    moved[:, 0] = positions[:, 0] + step * np.cos(headings)
    moved[:, 1] = positions[:, 1] + step * np.sin(headings)
    return moved


def run_maneuver(
    initial_positions: np.ndarray,
    params: FlockParams,
    leader_ids,
    seed: int | None = None,
) -> FlockTrajectory:
    """Simulate the full turn maneuver, recording positions and headings.

    Neighborhoods are recomputed from current positions every step, so the
    sensing graph may change mid-run. Agents that momentarily lose every
    neighbor coast on their reinforcement term alone until the graph heals.
    Requires every agent to have at least two neighbors at the start.
    """
    positions0 = np.asarray(initial_positions, dtype=float)
    topology = NetworkTopology.build(positions0, params.sensing_radius, leader_ids)
    if min_neighbor_count(topology) < 2:
        raise ValueError(
            "initial placement must give every agent at least two neighbors"
        )
    dsr = replace(
        params.dsr,
        source=StepSource(
            initial=params.initial_heading,
            final=params.target_heading,
            switch_step=params.switch_step,
        ),
    )
    n = topology.n_agents
    dt = dsr.update_interval
    rows = params.n_steps + 1
    positions = np.empty((rows, n, 2))
    headings = np.empty((rows, n))
    positions[0] = positions0
    headings[0] = params.initial_heading
    state = InfoState.from_initial(headings[0])

    diverged = False
    diverged_step = None
    last_row = params.n_steps
    for k in range(params.n_steps):
        step_topology = (
            topology
            if k == 0
            else NetworkTopology.build(
                positions[k], params.sensing_radius, leader_ids
            )
        )
        state = dsr_step(state, step_topology, dsr, seed, isolated="coast")
        headings[k + 1] = state.current
        positions[k + 1] = kinematic_step(
            positions[k], state.current, params.speed, dt
        )
        if detect_divergence(state):
            diverged = True
            diverged_step = state.step
            last_row = k + 1
            break
    rows = last_row + 1
    return FlockTrajectory(
        times=np.arange(rows) * dt,
        positions=positions[:rows],
        headings=headings[:rows],
        params=params,
        leader_ids=tuple(sorted(topology.leader_ids)),
        diverged=diverged,
        diverged_step=diverged_step,
    )
