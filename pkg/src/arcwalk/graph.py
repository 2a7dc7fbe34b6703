"""Undirected graphs with a canonical directed-arc basis.

Every graph is simple, connected, and free of isolated nodes.  Adjacency
lists are sorted ascending by neighbor id, which fixes the arc basis and
therefore the walk dynamics; all quantitative results are ordering-dependent.
Node ids are 1-based at the API boundary and 0-based internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "load_edge_list",
    "load_pajek",
    "betti_number",
    "is_bipartite",
    "builtin",
    "BUILTIN_NAMES",
]


class GraphError(ValueError):
    """Raised for malformed input data or violated graph invariants."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph with flat arc indexing.

    The arc basis enumerates directed arcs (i -> j) grouped by tail node:
    arc ``arc_offsets[i] + s`` is the arc from node ``i`` to its ``s``-th
    neighbor in sorted order.  ``reverse_arc`` is the involutive permutation
    sending each arc to its reverse.
    """

    adjacency: tuple[tuple[int, ...], ...]
    degrees: np.ndarray = field(init=False, repr=False)
    arc_offsets: np.ndarray = field(init=False, repr=False)
    arc_tail: np.ndarray = field(init=False, repr=False)
    arc_head: np.ndarray = field(init=False, repr=False)
    reverse_arc: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        degrees = np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.intp)
        offsets = np.concatenate([[0], np.cumsum(degrees)])
        tail = np.repeat(np.arange(len(self.adjacency)), degrees)
        head = np.fromiter(
            (j for nbrs in self.adjacency for j in nbrs), dtype=np.intp, count=offsets[-1]
        )
        slot = {(i, j): s for i, nbrs in enumerate(self.adjacency) for s, j in enumerate(nbrs)}
        reverse = np.array(
            [offsets[j] + slot[(j, i)] for i, j in zip(tail, head)], dtype=np.intp
        )
        for name, value in [
            ("degrees", degrees),
            ("arc_offsets", offsets),
            ("arc_tail", tail),
            ("arc_head", head),
            ("reverse_arc", reverse),
        ]:
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def node_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return self.arc_count // 2

    @property
    def arc_count(self) -> int:
        """Hilbert-space dimension: sum of degrees (edges double-counted)."""
        return int(self.arc_offsets[-1])

    def degree(self, node: int) -> int:
        """Degree of a node (1-based id)."""
        return int(self.degrees[node - 1])

    def neighbors(self, node: int) -> tuple[int, ...]:
        """Sorted neighbor ids (1-based) of a node (1-based id)."""
        return tuple(j + 1 for j in self.adjacency[node - 1])

    def arc_index(self, tail: int, slot: int) -> int:
        """Flat arc index of the arc leaving 0-based ``tail`` at ``slot``."""
        if not 0 <= tail < self.node_count:
            raise GraphError(f"node index {tail} out of range")
        if not 0 <= slot < self.degrees[tail]:
            raise GraphError(f"slot {slot} out of range for node of degree {self.degrees[tail]}")
        return int(self.arc_offsets[tail] + slot)

    def arc_endpoints(self, arc: int) -> tuple[int, int]:
        """(tail, slot) pair of a flat arc index, both 0-based."""
        if not 0 <= arc < self.arc_count:
            raise GraphError(f"arc index {arc} out of range")
        tail = int(self.arc_tail[arc])
        return tail, int(arc - self.arc_offsets[tail])

    @classmethod
    def from_edges(cls, edges, node_count: int | None = None) -> "Graph":
        """Build a graph from 0-based undirected edge pairs.

        Rejects self-loops, duplicate edges, isolated nodes, and
        disconnected graphs.
        """
        edge_set: set[tuple[int, int]] = set()
        max_node = -1
        for a, b in edges:
            if a == b:
                raise GraphError(f"self-loop at node {a + 1}")
            key = (min(a, b), max(a, b))
            if key in edge_set:
                raise GraphError(f"duplicate edge {key[0] + 1}-{key[1] + 1}")
            edge_set.add(key)
            max_node = max(max_node, a, b)
        if not edge_set:
            raise GraphError("graph has no edges")
        n = max_node + 1 if node_count is None else node_count
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in edge_set:
            if b >= n:
                raise GraphError(f"edge endpoint {b + 1} exceeds declared node count {n}")
            adj[a].append(b)
            adj[b].append(a)
        for i, nbrs in enumerate(adj):
            if not nbrs:
                raise GraphError(f"node {i + 1} is isolated")
        graph = cls(tuple(tuple(sorted(nbrs)) for nbrs in adj))
        if not _is_connected(graph):
            raise GraphError("graph is disconnected")
        return graph


def _is_connected(graph: Graph) -> bool:
    n = graph.node_count
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in graph.adjacency[i]:
            if not seen[j]:
                seen[j] = True
                stack.append(j)
    return bool(seen.all())


def load_edge_list(text: str) -> Graph:
    """Parse a whitespace-separated, 1-indexed edge list.

    Lines starting with '#' and blank lines are ignored.  Node ids are
    compacted to 1..N preserving numeric order.
    """
    raw_edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two node ids, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer node id in {line!r}") from None
        if a < 1 or b < 1:
            raise GraphError(f"line {lineno}: node ids must be positive")
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at node {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {a}-{b}")
        seen.add(key)
        raw_edges.append((a, b))
    if not raw_edges:
        raise GraphError("edge list is empty")
    ids = sorted({v for e in raw_edges for v in e})
    compact = {v: k for k, v in enumerate(ids)}
    return Graph.from_edges([(compact[a], compact[b]) for a, b in raw_edges])


def load_pajek(text: str) -> Graph:
    """Parse a Pajek network file as an unweighted undirected graph.

    Both ``*Edges`` and ``*Arcs`` sections are treated symmetrically and
    any weight column is discarded.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    n_declared: int | None = None
    edges: list[tuple[int, int]] = []
    edge_seen: set[tuple[int, int]] = set()
    section = None
    for lineno, line in enumerate(lines, start=1):
        if not line or line.startswith("%"):
            continue
        low = line.lower()
        if low.startswith("*vertices"):
            parts = line.split()
            if len(parts) < 2:
                raise GraphError(f"line {lineno}: malformed *Vertices header")
            try:
                n_declared = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: malformed *Vertices count") from None
            section = "vertices"
        elif low.startswith("*edges") or low.startswith("*arcs"):
            if n_declared is None:
                raise GraphError(f"line {lineno}: edge section before *Vertices header")
            section = "edges"
        elif low.startswith("*"):
            raise GraphError(f"line {lineno}: unknown section {line.split()[0]!r}")
        elif section == "edges":
            parts = line.split()
            if len(parts) < 2:
                raise GraphError(f"line {lineno}: malformed edge record {line!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: non-integer node id in {line!r}") from None
            if a == b:
                raise GraphError(f"line {lineno}: self-loop at node {a}")
            if not (1 <= a <= n_declared and 1 <= b <= n_declared):
                raise GraphError(
                    f"line {lineno}: node id outside declared range 1..{n_declared}"
                )
            key = (min(a, b), max(a, b))
            if key not in edge_seen:
                edge_seen.add(key)
                edges.append(key)
        # vertex label lines are ignored
    if n_declared is None:
        raise GraphError("missing *Vertices header")
    if not edges:
        raise GraphError("Pajek file declares no edges")
    mentioned = {v for e in edges for v in e}
    missing = sorted(set(range(1, n_declared + 1)) - mentioned)
    if missing:
        raise GraphError(f"isolated declared vertex {missing[0]}")
    return Graph.from_edges([(a - 1, b - 1) for a, b in edges], node_count=n_declared)


def betti_number(graph: Graph) -> int:
    """First Betti number |E| - |V| + 1 of a connected graph."""
    if not _is_connected(graph):
        raise GraphError("Betti number requires a connected graph")
    return graph.edge_count - graph.node_count + 1


def is_bipartite(graph: Graph) -> bool:
    """Two-colorability test via BFS."""
    n = graph.node_count
    color = np.full(n, -1, dtype=np.int8)
    for start in range(n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            i = queue.pop()
            for j in graph.adjacency[i]:
                if color[j] < 0:
                    color[j] = 1 - color[i]
                    queue.append(j)
                elif color[j] == color[i]:
                    return False
    return True


def _three_community() -> Graph:
    # Three 7-node communities; hub wired to all members, members on a
    # 6-cycle, hubs pairwise connected.  N=21, |E|=39, D=78, b1=19.
    edges: list[tuple[int, int]] = []
    for hub, members in [(0, range(1, 7)), (12, [7, 8, 9, 10, 11, 13]), (20, range(14, 20))]:
        members = list(members)
        edges.extend((hub, m) for m in members)
        edges.extend(zip(members, members[1:] + members[:1]))
    edges.extend([(0, 12), (12, 20), (0, 20)])
    return Graph.from_edges(edges)


def _karate() -> Graph:
    text = resources.files("arcwalk.data").joinpath("karate.txt").read_text()
    return load_edge_list(text)


def _cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle requires n >= 3")
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def _path(n: int) -> Graph:
    if n < 2:
        raise GraphError("path requires n >= 2")
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def _complete(n: int) -> Graph:
    if n < 2:
        raise GraphError("complete requires n >= 2")
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def _square_triangle() -> Graph:
    # Square 1-2-3-4 sharing the edge 1-2 with the triangle 1-2-5.
    # |V|=5, |E|=6, b1=2, non-bipartite.
    return Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])


BUILTIN_NAMES = (
    "three_community",
    "karate",
    "square_triangle",
    "cycle(n)",
    "path(n)",
    "complete(n)",
)

_PARAMETRIC = {"cycle": _cycle, "path": _path, "complete": _complete}
_FIXED = {
    "three_community": _three_community,
    "karate": _karate,
    "square_triangle": _square_triangle,
}


def builtin(name: str) -> Graph:
    """Return a named built-in graph, e.g. ``karate`` or ``cycle(6)``."""
    name = name.strip()
    if name in _FIXED:
        return _FIXED[name]()
    match = re.fullmatch(r"(cycle|path|complete)\((\d+)\)", name)
    if match:
        return _PARAMETRIC[match.group(1)](int(match.group(2)))
    raise GraphError(f"unknown builtin graph {name!r}")
