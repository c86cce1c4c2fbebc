"""Undirected connectivity graphs over vertex indices 0..n-1.

Graphs are immutable after construction. Vertices are 0-indexed integers;
edges are unordered pairs stored as (u, v) with u < v. Determinism is a
contract: every operation breaks ties by ascending vertex/edge order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .topologies import TopologySpec


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with an optional topology tag.

    The tag records which canonical builder produced the graph (path, grid,
    brick wall, ...) so routing can dispatch to the matching specialized
    router.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    topology: "TopologySpec | None" = None
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            if u > v:
                raise ValueError(f"edge {e} not normalized (expected u < v)")
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(
            self, "adjacency", tuple(tuple(sorted(ns)) for ns in adj)
        )

    @classmethod
    def from_edges(
        cls, n: int, edges, topology: "TopologySpec | None" = None
    ) -> "Graph":
        return cls(n, frozenset(normalize_edge(u, v) for u, v in edges), topology)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint set of edges."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for u, v in self.pairs:
            if u in seen or v in seen or u == v:
                raise ValueError(f"pair ({u}, {v}) overlaps another pair")
            seen.add(u)
            seen.add(v)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def maximal_matching(g: Graph) -> Matching:
    """Greedy maximal matching, scanning edges in ascending (u, v) order."""
    used: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for u, v in g.sorted_edges():
        if u not in used and v not in used:
            pairs.append((u, v))
            used.add(u)
            used.add(v)
    return Matching(frozenset(pairs))


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Distances from source; -1 for unreachable vertices."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    return all(d >= 0 for d in bfs_distances(g, 0))


def diameter(g: Graph) -> int:
    """Largest shortest-path distance over all vertex pairs."""
    best = 0
    for v in range(g.n):
        dist = bfs_distances(g, v)
        m = max(dist)
        if min(dist) < 0:
            raise ValueError("disconnected")
        best = max(best, m)
    return best


def induced_subgraph(g: Graph, s) -> tuple[Graph, list[int]]:
    """Subgraph induced on vertex set s, re-indexed to 0..|s|-1.

    Returns the subgraph plus the index map: element i of the map is the
    original vertex now labeled i. Original vertices are kept in ascending
    order.
    """
    verts = sorted(set(s))
    for v in verts:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    index = {v: i for i, v in enumerate(verts)}
    edges = [
        (index[u], index[v])
        for u, v in g.edges
        if u in index and v in index
    ]
    return Graph.from_edges(len(verts), edges), verts


def spanning_tree(g: Graph) -> Graph:
    """BFS spanning tree from vertex 0, visiting neighbors in ascending order."""
    parent = [-1] * g.n
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    edges: list[tuple[int, int]] = []
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                edges.append(normalize_edge(u, w))
                queue.append(w)
    if not all(seen):
        raise ValueError("disconnected")
    return Graph.from_edges(g.n, edges)


def is_tree(g: Graph) -> bool:
    return len(g.edges) == g.n - 1 and is_connected(g)
