"""Shared test helpers."""

from __future__ import annotations

from itertools import combinations, permutations
from random import Random

import pytest

from swaproute import Graph, Permutation


def random_perm(n: int, rng: Random) -> Permutation:
    return Permutation(tuple(rng.sample(range(n), n)))


def all_perms(n: int):
    for dest in permutations(range(n)):
        yield Permutation(dest)


def connected_graphs_up_to_iso(n: int) -> list[Graph]:
    """All connected graphs on n vertices, one representative per iso class."""
    verts = list(range(n))
    all_edges = list(combinations(verts, 2))
    seen: set[frozenset] = set()
    out: list[Graph] = []
    for bits in range(1 << len(all_edges)):
        edges = [e for i, e in enumerate(all_edges) if bits >> i & 1]
        if len(edges) < n - 1:
            continue
        g = Graph.from_edges(n, edges)
        from swaproute import is_connected

        if not is_connected(g):
            continue
        canon = min(
            tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges))
            for p in permutations(verts)
        )
        if canon in seen:
            continue
        seen.add(canon)
        out.append(g)
    return out


@pytest.fixture(scope="session")
def small_graph_zoo():
    """Connected graphs up to isomorphism for n in 2..5 (31 graphs total)."""
    zoo = []
    for n in range(2, 6):
        zoo.extend(connected_graphs_up_to_iso(n))
    return zoo
