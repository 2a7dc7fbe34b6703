"""Walk states, time stepping, and time-averaged transition probabilities.

Transition rows follow the site-averaging convention: a walk from node i is
started once per outgoing arc and the resulting node probabilities are
averaged with weight 1/k_i.  The normalized row divides by the target
degree k_l, which removes the degree bias of the raw probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError
from .operators import WalkOperator

__all__ = [
    "WalkState",
    "TransitionRow",
    "basis_state",
    "step",
    "evolve",
    "node_probability",
    "transition_probability",
    "finite_time_average",
    "finite_time_average_matrix",
    "DEFAULT_AVERAGE_STEPS",
]

DEFAULT_AVERAGE_STEPS = 100


@dataclass(frozen=True)
class WalkState:
    """Unit-norm amplitude vector over the D directed arcs at time t."""

    graph: Graph
    amplitudes: np.ndarray
    time: int = 0

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class TransitionRow:
    """Per-target-node probabilities of a walk started at ``start``.

    ``probability`` is p(start -> l), summing to 1; ``normalized`` is
    p(start -> l) / k_l.  ``time`` is the step count, or the averaging
    window (first, last) for time-averaged rows.
    """

    start: int
    probability: np.ndarray
    normalized: np.ndarray
    time: int | tuple[int, int | None]


def basis_state(graph: Graph, node: int, slot: int = 0) -> WalkState:
    """Delta state on the arc leaving ``node`` (1-based) at ``slot``."""
    amplitudes = np.zeros(graph.arc_count, dtype=complex)
    amplitudes[graph.arc_index(node - 1, slot)] = 1.0
    return WalkState(graph, amplitudes, 0)


def step(op: WalkOperator, state: WalkState) -> WalkState:
    """One application of the walk unitary."""
    return WalkState(state.graph, op.apply_amplitudes(state.amplitudes), state.time + 1)


def evolve(op: WalkOperator, state: WalkState, steps: int) -> WalkState:
    if steps < 0:
        raise ValueError("step count must be non-negative")
    amplitudes = state.amplitudes
    for _ in range(steps):
        amplitudes = op.apply_amplitudes(amplitudes)
    return WalkState(state.graph, amplitudes, state.time + steps)


def node_probability(state: WalkState) -> np.ndarray:
    """p(i; t): squared amplitudes summed over each node's outgoing arcs."""
    return _node_probability_raw(state.graph, state.amplitudes)


def _node_probability_raw(graph: Graph, amplitudes: np.ndarray) -> np.ndarray:
    # supports batched amplitudes of shape (..., D); reduces the last axis
    weights = np.abs(amplitudes) ** 2
    return np.add.reduceat(weights, graph.arc_offsets[:-1], axis=-1)


def _initial_batch(graph: Graph, node: int) -> np.ndarray:
    """One basis state per outgoing arc of ``node`` (1-based), as rows."""
    i = node - 1
    if not 1 <= node <= graph.node_count:
        raise GraphError(f"node {node} out of range 1..{graph.node_count}")
    k = int(graph.degrees[i])
    batch = np.zeros((k, graph.arc_count), dtype=complex)
    o = int(graph.arc_offsets[i])
    batch[np.arange(k), o + np.arange(k)] = 1.0
    return batch


def transition_probability(op: WalkOperator, node: int, steps: int) -> TransitionRow:
    """p(i -> l; t) and its degree-normalized form at a single time step."""
    if steps < 0:
        raise ValueError("step count must be non-negative")
    graph = op.graph
    batch = _initial_batch(graph, node)
    for _ in range(steps):
        batch = op.apply_amplitudes(batch)
    p = _node_probability_raw(graph, batch).mean(axis=0)
    return TransitionRow(node, p, p / graph.degrees, steps)


def finite_time_average(
    op: WalkOperator,
    node: int,
    steps: int = DEFAULT_AVERAGE_STEPS,
    include_start: bool = False,
) -> TransitionRow:
    """Arithmetic mean of the transition row over t = 1..steps.

    ``include_start`` widens the window to t = 0..steps; the default excludes
    t = 0, which would only weight the diagonal.
    """
    if steps < 1:
        raise ValueError("averaging window must contain at least one step")
    graph = op.graph
    batch = _initial_batch(graph, node)
    accum = np.zeros(graph.node_count)
    count = 0
    if include_start:
        accum += _node_probability_raw(graph, batch).mean(axis=0)
        count += 1
    for _ in range(steps):
        batch = op.apply_amplitudes(batch)
        accum += _node_probability_raw(graph, batch).mean(axis=0)
        count += 1
    p = accum / count
    window = (0 if include_start else 1, steps)
    return TransitionRow(node, p, p / graph.degrees, window)


def finite_time_average_matrix(
    op: WalkOperator,
    steps: int = DEFAULT_AVERAGE_STEPS,
    include_start: bool = False,
    chunk_arcs: int = 1024,
) -> tuple[np.ndarray, np.ndarray]:
    """Time-averaged (p, P) matrices over all start nodes.

    Returns two (N, N) arrays indexed [start, target].  Work is chunked over
    initial arcs to bound memory on large graphs.
    """
    if steps < 1:
        raise ValueError("averaging window must contain at least one step")
    graph = op.graph
    d = graph.arc_count
    n = graph.node_count
    arc_node_prob = np.zeros((d, n))
    for lo in range(0, d, chunk_arcs):
        hi = min(lo + chunk_arcs, d)
        batch = np.zeros((hi - lo, d), dtype=complex)
        batch[np.arange(hi - lo), np.arange(lo, hi)] = 1.0
        accum = np.zeros((hi - lo, n))
        count = 0
        if include_start:
            accum += _node_probability_raw(graph, batch)
            count += 1
        for _ in range(steps):
            batch = op.apply_amplitudes(batch)
            accum += _node_probability_raw(graph, batch)
            count += 1
        arc_node_prob[lo:hi] = accum / count
    # average the rows of each start node's outgoing arcs
    p = np.add.reduceat(arc_node_prob, graph.arc_offsets[:-1], axis=0)
    p /= graph.degrees[:, None]
    return p, p / graph.degrees[None, :]
