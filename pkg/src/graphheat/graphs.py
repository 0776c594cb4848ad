"""Undirected simple graphs: constructors, random models, structural queries, edge-list IO."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

# Dense adjacency/Laplacian matrices are only materialized up to this size;
# larger graphs can still be built and queried structurally.
DENSE_CAP = 2000


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected graph."""


class DenseCapError(ValueError):
    """Raised when a dense matrix is requested for a graph above the size cap."""


def _canonical_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on nodes 0..n-1.

    Edges are stored as a sorted tuple of (u, v) pairs with u < v. No
    self-loops or duplicate edges are admitted.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"node count must be positive, got {self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop ({u},{u}) not allowed")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range or not canonical")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from any iterable of (u, v) pairs, canonicalizing order."""
        canon = sorted({_canonical_edge(int(u), int(v)) for u, v in edges})
        return cls(n=n, edges=tuple(canon))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-node sorted neighbor tuples."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _canonical_edge(u, v) in set(self.edges)

    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2.0 * self.num_edges / (self.n * (self.n - 1))

    def adjacency_matrix(self, cap: int = DENSE_CAP) -> np.ndarray:
        """Dense 0/1 adjacency matrix; refuses graphs larger than `cap` nodes."""
        if self.n > cap:
            raise DenseCapError(
                f"graph has {self.n} nodes, above dense cap {cap}"
            )
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = 1.0
            a[v, u] = 1.0
        return a


@dataclass(frozen=True)
class StepSet:
    """Step offsets of a circulant graph: strictly increasing positive integers."""

    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("step set must be non-empty")
        prev = 0
        for s in self.steps:
            if s <= prev:
                raise ValueError(f"steps must be strictly increasing positive, got {self.steps}")
            prev = s

    @classmethod
    def of(cls, *steps: int) -> "StepSet":
        return cls(tuple(sorted(int(s) for s in steps)))

    def validate_for(self, n: int) -> None:
        if self.steps[-1] > n // 2:
            raise ValueError(
                f"max step {self.steps[-1]} exceeds floor(n/2)={n // 2} for n={n}"
            )


def make_complete(n: int) -> Graph:
    """Complete graph K_n."""
    if n < 1:
        raise ValueError(f"invalid size n={n}")
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def make_path(n: int) -> Graph:
    """Path graph P_n with edges (i, i+1)."""
    if n < 1:
        raise ValueError(f"invalid size n={n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def make_circulant(n: int, steps: StepSet | Sequence[int]) -> Graph:
    """Circulant graph C_n(S): edges between nodes at ring offsets in S."""
    if n < 2:
        raise ValueError(f"invalid size n={n}")
    s = steps if isinstance(steps, StepSet) else StepSet.of(*steps)
    s.validate_for(n)
    edges = set()
    for step in s.steps:
        for i in range(n):
            edges.add(_canonical_edge(i, (i + step) % n))
    return Graph.from_edges(n, edges)


def make_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """ER graph: each unordered pair included independently with probability p.

    Deterministic given the seed (PCG64 stream).
    """
    if n < 1:
        raise ValueError(f"invalid size n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"invalid probability p={p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    return Graph.from_edges(n, zip(iu[mask].tolist(), ju[mask].tolist()))


def make_watts_strogatz(n: int, k: int, p: float, seed: int) -> Graph:
    """Watts-Strogatz graph: C_n({1..k}) skeleton with random edge rewiring.

    Each skeleton edge (visited in sorted order) is rewired with probability p:
    the lower endpoint is kept and the other endpoint is resampled uniformly
    among nodes that create neither a self-loop nor a duplicate edge. The edge
    count n*k is preserved.
    """
    if not 1 <= k <= (n - 1) // 2:
        raise ValueError(f"invalid parameter k={k} for n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"invalid probability p={p}")
    skeleton = make_circulant(n, StepSet.of(*range(1, k + 1)))
    rng = np.random.default_rng(seed)
    edge_set = set(skeleton.edges)
    for edge in skeleton.edges:
        if rng.random() >= p:
            continue
        u = edge[0]
        candidates = [
            w for w in range(n) if w != u and _canonical_edge(u, w) not in edge_set
        ]
        if not candidates:
            continue
        w = candidates[rng.integers(len(candidates))]
        edge_set.remove(edge)
        edge_set.add(_canonical_edge(u, w))
    return Graph.from_edges(n, edge_set)


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Hop distances from source; math.inf for unreachable nodes."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range for n={g.n}")
    dist = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] == math.inf:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    """Partition of nodes into connected components (each sorted, ordered by min node)."""
    seen = [False] * g.n
    parts: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        parts.append(sorted(comp))
    return parts


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def diameter(g: Graph) -> int:
    """Largest hop distance between any node pair; errors on disconnected graphs."""
    ecc = 0
    for source in range(g.n):
        dist = bfs_distances(g, source)
        far = max(dist)
        if far == math.inf:
            raise DisconnectedGraphError("diameter undefined for disconnected graph")
        ecc = max(ecc, int(far))
    return ecc


def read_edge_list(path: str) -> Graph:
    """Read a graph from a plain-text edge list.

    One `u v` pair per line, 0-indexed; `#` starts a comment; an optional
    `n=<int>` header fixes the node count (otherwise max index + 1).
    """
    n_header: int | None = None
    edges: list[tuple[int, int]] = []
    max_idx = -1
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("n="):
                n_header = int(line[2:])
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"malformed edge line: {raw!r}")
            u, v = int(parts[0]), int(parts[1])
            max_idx = max(max_idx, u, v)
            edges.append((u, v))
    n = n_header if n_header is not None else max_idx + 1
    if n < 1:
        raise ValueError("edge list defines no nodes")
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph, path: str) -> None:
    """Write a graph in the same edge-list format accepted by read_edge_list."""
    with open(path, "w") as fh:
        fh.write(f"n={g.n}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")
