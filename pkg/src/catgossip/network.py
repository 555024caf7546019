"""Communication graphs: construction, validation, and the wake-up law.

Graphs are undirected, simple, and connected.  At every tick one agent
wakes uniformly at random and solicits a uniform neighbor, so the ordered
pair (v, w) has probability 1/(N deg(v)) and the unordered edge {v, w} has
probability (1/N)(1/deg(v) + 1/deg(w)).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import DisconnectedGraph, InvalidEdge


@dataclass(frozen=True)
class Graph:
    """Immutable undirected connected graph with structural metadata."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    diameter: int
    max_degree: int
    _edge_arrays: tuple[np.ndarray, np.ndarray, np.ndarray] = field(repr=False, compare=False, default=None)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted unordered edges as (u, w) with u < w."""
        return [(u, w) for u in range(self.n) for w in self.adjacency[u] if u < w]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Vectorized edge view: endpoint index arrays plus the weights
        1/deg(u) + 1/deg(w) used by the disagreement functional."""
        return self._edge_arrays


def _finish(n: int, adj: list[set[int]]) -> Graph:
    adjacency = tuple(tuple(sorted(s)) for s in adj)
    degrees = tuple(len(s) for s in adjacency)
    if min(degrees) == 0 and n > 1:
        raise DisconnectedGraph("isolated vertex")
    diameter = _bfs_diameter(n, adjacency)
    edges = [(u, w) for u in range(n) for w in adjacency[u] if u < w]
    eu = np.array([e[0] for e in edges], dtype=np.intp)
    ew = np.array([e[1] for e in edges], dtype=np.intp)
    weights = 1.0 / np.array(degrees, dtype=float)
    wts = weights[eu] + weights[ew]
    return Graph(
        n=n,
        adjacency=adjacency,
        degrees=degrees,
        diameter=diameter,
        max_degree=max(degrees),
        _edge_arrays=(eu, ew, wts),
    )


def _bfs_diameter(n: int, adjacency) -> int:
    diameter = 0
    for source in range(n):
        dist = [-1] * n
        dist[source] = 0
        queue = deque([source])
        seen = 1
        while queue:
            u = queue.popleft()
            for w in adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                    seen += 1
        if seen != n:
            raise DisconnectedGraph(f"vertex {source} cannot reach the whole graph")
        diameter = max(diameter, max(dist))
    return diameter


def build_complete(n: int) -> Graph:
    _check_order(n)
    return _finish(n, [set(range(n)) - {v} for v in range(n)])


def build_path(n: int) -> Graph:
    _check_order(n)
    adj = [set() for _ in range(n)]
    for i in range(n - 1):
        adj[i].add(i + 1)
        adj[i + 1].add(i)
    return _finish(n, adj)


def build_from_edge_list(n: int, edges) -> Graph:
    _check_order(n)
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, w in edges:
        if not (0 <= u < n and 0 <= w < n):
            raise InvalidEdge(f"edge ({u}, {w}) out of range for {n} vertices")
        if u == w:
            raise InvalidEdge(f"self-loop at vertex {u}")
        if w in adj[u]:
            raise InvalidEdge(f"duplicate edge ({u}, {w})")
        adj[u].add(w)
        adj[w].add(u)
    return _finish(n, adj)


def _check_order(n: int) -> None:
    if n < 2:
        raise InvalidEdge(f"graph needs at least 2 agents, got {n}")


def parse_edge_list(text: str) -> list[tuple[int, int]]:
    """Parse the 'u w' one-pair-per-line format; '#' starts a comment."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidEdge(f"line {lineno}: expected 'u w', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return edges


def load_edge_file(path, n: int) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return build_from_edge_list(n, parse_edge_list(handle.read()))


def edge_probability(g: Graph, v: int, w: int) -> float:
    """Probability that the unordered active pair at a tick equals {v, w}."""
    if v == w:
        raise InvalidEdge("edge probability is defined for distinct vertices")
    if w not in g.adjacency[v]:
        return 0.0
    return (1.0 / g.n) * (1.0 / g.degrees[v] + 1.0 / g.degrees[w])


def sample_pair(g: Graph, rng: np.random.Generator) -> tuple[int, int]:
    """Draw the ordered wake-up pair: v uniform, then w uniform in N(v)."""
    v = int(rng.integers(g.n))
    nbrs = g.adjacency[v]
    w = nbrs[int(rng.integers(len(nbrs)))]
    return v, w


def c_g_constant(g: Graph) -> float:
    """(N - 1) * max degree * diameter, an upper equivalence constant
    between the variance and the disagreement functionals."""
    return float((g.n - 1) * g.max_degree * g.diameter)
