"""Coin matrices, the arc-reversal shift, and the composed walk unitary.

The walk unitary U = (shift) x (block-diagonal coin) is kept in structured
form: one coin block per degree value plus the reverse-arc permutation.
Applying it costs O(sum of k_i^2) and never materializes the D x D matrix.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError, builtin

__all__ = [
    "CoinKind",
    "fourier_coin",
    "grover_coin",
    "coin_matrix",
    "WalkOperator",
    "build_walk_operator",
    "materialize_dense",
    "verify_shift_equivalence",
    "DEFAULT_DENSE_CAP",
    "DenseCapExceeded",
]

DEFAULT_DENSE_CAP = 6000
_DENSE_CAP_ENV = "ARCWALK_DENSE_CAP"


class DenseCapExceeded(RuntimeError):
    """Raised when a dense materialization would exceed the size guard."""


class CoinKind(enum.Enum):
    FOURIER = "fourier"
    GROVER = "grover"


def fourier_coin(k: int) -> np.ndarray:
    """k x k Fourier (DFT) coin: entry (a, b) = exp(2*pi*i*a*b/k) / sqrt(k)."""
    if k < 1:
        raise ValueError(f"coin dimension must be positive, got {k}")
    a = np.arange(k)
    return np.exp(2j * np.pi * np.outer(a, a) / k) / np.sqrt(k)


def grover_coin(k: int) -> np.ndarray:
    """k x k Grover coin: (2-k)/k on the diagonal, 2/k elsewhere."""
    if k < 1:
        raise ValueError(f"coin dimension must be positive, got {k}")
    return (2.0 / k) * np.ones((k, k)) - np.eye(k) + 0j


def coin_matrix(kind: CoinKind, k: int) -> np.ndarray:
    return fourier_coin(k) if kind is CoinKind.FOURIER else grover_coin(k)


@dataclass(frozen=True, eq=False)
class WalkOperator:
    """Structured form of the walk unitary U = SC on a graph.

    ``blocks`` holds one coin matrix per distinct degree (all nodes of equal
    degree share a block); ``shift`` is the reverse-arc permutation.
    Immutable and reentrant: one operator may drive many walks concurrently.
    """

    graph: Graph
    coin: CoinKind
    blocks: dict[int, np.ndarray] = field(init=False, repr=False)
    # per distinct degree k: (n_k, k) array of flat arc indices, row per node
    _degree_arcs: dict[int, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        degrees = self.graph.degrees
        offsets = self.graph.arc_offsets
        blocks: dict[int, np.ndarray] = {}
        degree_arcs: dict[int, np.ndarray] = {}
        for k in sorted(set(int(d) for d in degrees)):
            blocks[k] = coin_matrix(self.coin, k)
            nodes = np.flatnonzero(degrees == k)
            degree_arcs[k] = offsets[nodes][:, None] + np.arange(k)[None, :]
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_degree_arcs", degree_arcs)

    @property
    def shift(self) -> np.ndarray:
        """The arc-reversal permutation (involutive)."""
        return self.graph.reverse_arc

    @property
    def dimension(self) -> int:
        return self.graph.arc_count

    def apply_amplitudes(self, psi: np.ndarray) -> np.ndarray:
        """Apply U to amplitude vector(s) of shape (..., D)."""
        if psi.shape[-1] != self.dimension:
            raise ValueError(
                f"state dimension {psi.shape[-1]} does not match D={self.dimension}"
            )
        out = np.empty(psi.shape, dtype=complex)
        for k, arcs in self._degree_arcs.items():
            # (..., n_k, k) batch of per-node coin applications
            out[..., arcs] = psi[..., arcs] @ self.blocks[k].T
        return out[..., self.graph.reverse_arc]


def build_walk_operator(graph: Graph, coin: CoinKind) -> WalkOperator:
    return WalkOperator(graph, coin)


def _dense_cap(override: int | None) -> int:
    if override is not None:
        return override
    env = os.environ.get(_DENSE_CAP_ENV)
    return int(env) if env else DEFAULT_DENSE_CAP


def materialize_dense(op: WalkOperator, cap: int | None = None) -> np.ndarray:
    """Dense D x D matrix of the walk unitary.

    Guarded by ``cap`` (default 6000, overridable via ARCWALK_DENSE_CAP).
    """
    limit = _dense_cap(cap)
    if op.dimension > limit:
        raise DenseCapExceeded(
            f"D={op.dimension} exceeds dense materialization cap {limit}"
        )
    # rows of the batch are U e_a, so columns of U are the batch rows
    return op.apply_amplitudes(np.eye(op.dimension, dtype=complex)).T


def _shift_matrix(graph: Graph) -> np.ndarray:
    d = graph.arc_count
    s = np.zeros((d, d))
    s[graph.reverse_arc, np.arange(d)] = 1.0
    return s


def verify_shift_equivalence(n: int) -> bool:
    """Check the flip-operator identity between the two shift conventions.

    On the n-cycle, the arc-reversal shift S times the per-node flip P equals
    the standard shift S' (right-movers stay right-movers), and consequently
    S(PC) = S'C for any coin C; checked here with the Fourier coin.
    """
    if n < 3:
        raise GraphError("shift equivalence check needs a cycle of length >= 3")
    graph = builtin(f"cycle({n})")
    d = graph.arc_count
    s = _shift_matrix(graph)
    flip = np.zeros((d, d))
    for i in range(graph.node_count):
        o = graph.arc_offsets[i]
        flip[o, o + 1] = flip[o + 1, o] = 1.0
    # standard shift: |x -> y>  ->  |2x - y -> x (mod n)>; movers keep their
    # direction while the walker advances one site
    s_std = np.zeros((d, d))
    slot = {
        (i, j): s_
        for i, nbrs in enumerate(graph.adjacency)
        for s_, j in enumerate(nbrs)
    }
    for arc in range(d):
        x, y = int(graph.arc_tail[arc]), int(graph.arc_head[arc])
        z = (2 * x - y) % n
        s_std[graph.arc_offsets[z] + slot[(z, x)], arc] = 1.0
    if not np.array_equal(s @ flip, s_std):
        return False
    coin = np.zeros((d, d), dtype=complex)
    f2 = fourier_coin(2)
    for i in range(graph.node_count):
        o = graph.arc_offsets[i]
        coin[o : o + 2, o : o + 2] = f2
    return bool(np.max(np.abs(s @ (flip @ coin) - s_std @ coin)) < 1e-15)
