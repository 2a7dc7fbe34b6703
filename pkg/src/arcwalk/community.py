"""Threshold-based community detection on averaged normalized probabilities.

Candidates are visited in degree-descending order (ties broken by ascending
node id).  An unclassified candidate becomes the hub of a new community and
absorbs every unclassified node whose normalized average exceeds the
threshold; a candidate that was already absorbed hands its would-be members
to the community it belongs to.  Nodes exceeding no threshold end up as
singleton communities, surfacing outliers instead of forcing a fit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError

__all__ = [
    "CommunityPartition",
    "SweepResult",
    "MarginEntry",
    "detect",
    "sweep",
    "margin_report",
    "DEFAULT_MARGINAL_BAND",
]

DEFAULT_MARGINAL_BAND = 0.1


@dataclass(frozen=True)
class CommunityPartition:
    """Result of one detection run.

    ``hubs`` lists each community's hub in creation order; ``assignment``
    maps every node (1-based) to a community index; ``margins`` holds
    P(own hub -> node) - q per node (aligned with node id - 1).
    """

    hubs: tuple[int, ...]
    assignment: dict[int, int]
    margins: np.ndarray
    threshold: float
    source: str

    @property
    def community_count(self) -> int:
        return len(self.hubs)

    def members(self, community: int) -> tuple[int, ...]:
        return tuple(
            sorted(node for node, c in self.assignment.items() if c == community)
        )

    def sizes(self) -> tuple[int, ...]:
        counts = [0] * len(self.hubs)
        for c in self.assignment.values():
            counts[c] += 1
        return tuple(counts)


@dataclass(frozen=True)
class SweepResult:
    """Community count and sizes per threshold value."""

    entries: tuple[tuple[float, int, tuple[int, ...]], ...]


@dataclass(frozen=True)
class MarginEntry:
    node: int
    hub: int
    margin: float
    marginal: bool


def _candidate_order(graph: Graph) -> list[int]:
    return sorted(range(graph.node_count), key=lambda i: (-int(graph.degrees[i]), i))


def detect(
    matrix: np.ndarray, graph: Graph, threshold: float, source: str = "average"
) -> CommunityPartition:
    """Partition the graph given the full N x N normalized average matrix."""
    n = graph.node_count
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {matrix.shape}")
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    assignment: dict[int, int] = {}
    hub_of_node = np.full(n, -1, dtype=np.intp)
    hubs: list[int] = []
    for cand in _candidate_order(graph):
        if cand in assignment:
            community = assignment[cand]
        else:
            community = len(hubs)
            hubs.append(cand)
            assignment[cand] = community
            hub_of_node[cand] = cand
        members = [
            l
            for l in np.flatnonzero(matrix[cand] > threshold)
            if int(l) not in assignment
        ]
        for l in members:
            assignment[int(l)] = community
            hub_of_node[l] = hubs[community]
        if len(assignment) == n:
            break
    margins = matrix[hub_of_node, np.arange(n)] - threshold
    return CommunityPartition(
        hubs=tuple(h + 1 for h in hubs),
        assignment={node + 1: c for node, c in assignment.items()},
        margins=margins,
        threshold=threshold,
        source=source,
    )


def sweep(
    matrix: np.ndarray, graph: Graph, thresholds, source: str = "average"
) -> SweepResult:
    """Run detection per threshold; thresholds must be ascending."""
    values = [float(q) for q in thresholds]
    if not values:
        raise ValueError("threshold list is empty")
    if any(b < a for a, b in zip(values, values[1:])):
        raise ValueError("threshold list must be ascending")
    entries = []
    for q in values:
        part = detect(matrix, graph, q, source=source)
        entries.append((q, part.community_count, part.sizes()))
    return SweepResult(tuple(entries))


def margin_report(
    matrix: np.ndarray,
    partition: CommunityPartition,
    band: float = DEFAULT_MARGINAL_BAND,
) -> list[MarginEntry]:
    """Margins of every node against every hub.

    A node is flagged marginal against a hub when |P(hub -> node) - q| is
    below ``band * q``, i.e. its classification would flip under a small
    threshold change.
    """
    q = partition.threshold
    entries = []
    for node in sorted(partition.assignment):
        for hub in partition.hubs:
            margin = float(matrix[hub - 1, node - 1] - q)
            entries.append(
                MarginEntry(node=node, hub=hub, margin=margin, marginal=abs(margin) < band * q)
            )
    return entries
