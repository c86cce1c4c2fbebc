"""Exhaustive references: exact routing numbers at desk scale, the exact
depth-overhead of SWAP circuits, and the constructive hardness-reduction
mapping from routing decisions to depth-overhead decisions.

All searches run breadth-first over pebble configurations with transitions
given by every matching of the graph (not only maximal ones - a round may
swap any vertex-disjoint edge subset). Oracles refuse inputs beyond their
budget instead of silently degrading.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .circuits import Circuit, depth, swap_gate
from .graphs import Graph
from .perms import Permutation, decompose_two_involutions
from .protocols import apply_protocol, swap_circuit_to_protocol


class BudgetExceeded(Exception):
    """Raised when an oracle input exceeds its configured budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 6
    max_states: int = 1_000_000

    def check_n(self, n: int) -> None:
        if n > self.max_n:
            raise BudgetExceeded(f"n={n} exceeds oracle budget max_n={self.max_n}")


DEFAULT_BUDGET = OracleBudget()


def enumerate_matchings(g: Graph) -> list[tuple[tuple[int, int], ...]]:
    """All non-empty matchings of g, enumerated deterministically."""
    edges = g.sorted_edges()
    out: list[tuple[tuple[int, int], ...]] = []

    def extend(i: int, used: set[int], current: list[tuple[int, int]]) -> None:
        if current:
            out.append(tuple(current))
        for j in range(i, len(edges)):
            u, v = edges[j]
            if u not in used and v not in used:
                current.append((u, v))
                used.update((u, v))
                extend(j + 1, used, current)
                used.difference_update((u, v))
                current.pop()

    extend(0, set(), [])
    return out


@lru_cache(maxsize=64)
def _matchings_cached(g: Graph) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(enumerate_matchings(g))


def _bfs_from_identity(
    g: Graph, b: OracleBudget, stop_at: tuple[int, ...] | None = None
) -> dict[tuple[int, ...], int]:
    """Distances from the identity configuration; optionally stop early."""
    matchings = _matchings_cached(g)
    start = tuple(range(g.n))
    dist: dict[tuple[int, ...], int] = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if stop_at is not None and state == stop_at:
            return dist
        d = dist[state] + 1
        for m in matchings:
            nxt = list(state)
            for u, v in m:
                nxt[u], nxt[v] = nxt[v], nxt[u]
            key = tuple(nxt)
            if key not in dist:
                if len(dist) >= b.max_states:
                    raise BudgetExceeded(
                        f"explored states exceed budget max_states={b.max_states}"
                    )
                dist[key] = d
                queue.append(key)
    return dist


def _occupancy(target: Permutation) -> tuple[int, ...]:
    # Pebble p must end at target(p), i.e. vertex x holds pebble target^{-1}(x).
    return tuple(target.inverse().dest)


def brute_force_rt(
    g: Graph, target: Permutation, b: OracleBudget = DEFAULT_BUDGET
) -> int:
    """Exact minimum number of matching-swap rounds realizing target."""
    b.check_n(g.n)
    if target.n != g.n:
        raise ValueError("permutation size mismatch")
    goal = _occupancy(target)
    dist = _bfs_from_identity(g, b, stop_at=goal)
    if goal not in dist:
        raise ValueError("target unreachable (disconnected graph)")
    return dist[goal]


def brute_force_rt_max(g: Graph, b: OracleBudget = DEFAULT_BUDGET) -> int:
    """Exact routing number: eccentricity of the configuration graph."""
    b.check_n(g.n)
    dist = _bfs_from_identity(g, b)
    import math

    if len(dist) != math.factorial(g.n):
        raise ValueError("state space not fully reachable (disconnected graph)")
    return max(dist.values())


def hardest_permutation(g: Graph, b: OracleBudget = DEFAULT_BUDGET) -> Permutation:
    """A permutation attaining the routing number (smallest occupancy wins ties)."""
    b.check_n(g.n)
    dist = _bfs_from_identity(g, b)
    worst = max(dist.values())
    occ = min(state for state, d in dist.items() if d == worst)
    return Permutation(occ).inverse()


def doh_swap_circuit(
    g: Graph, c: Circuit, b: OracleBudget = DEFAULT_BUDGET
) -> Fraction:
    """Exact depth overhead of a SWAP circuit under the constraint graph.

    Equals rt(g, pi)/depth(c) where pi is the permutation the circuit
    realizes; exact because compliant recompilations of a SWAP circuit are
    themselves SWAP circuits in one-one correspondence with protocols.
    """
    if not c.is_swap_only():
        raise ValueError("circuit contains non-SWAP gates")
    d = depth(c)
    if d == 0:
        raise ValueError("zero-depth circuit")
    realized = apply_protocol(swap_circuit_to_protocol(c))
    return Fraction(brute_force_rt(g, realized, b), d)


def hardness_reduction(
    g: Graph, target: Permutation, k: int
) -> tuple[Circuit, Fraction]:
    """Map a routing decision instance (g, target, k) to a depth-overhead one.

    Emits a depth-1 SWAP circuit for an involution (alpha = k), otherwise the
    depth-2 circuit from the two-involution decomposition (alpha = k/2), so
    that rt(g, target) <= k iff the circuit's depth overhead is <= alpha.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    if target.n != g.n:
        raise ValueError("permutation size mismatch")
    if target.is_identity():
        raise ValueError("identity target rejected")
    if target.is_involution():
        layer = [swap_gate(u, v) for u, v in target.transpositions()]
        return Circuit.from_layers(g.n, [layer]), Fraction(k)
    s1, s2 = decompose_two_involutions(target)
    layers = [
        [swap_gate(u, v) for u, v in s2.transpositions()],
        [swap_gate(u, v) for u, v in s1.transpositions()],
    ]
    return Circuit.from_layers(g.n, layers), Fraction(k, 2)
