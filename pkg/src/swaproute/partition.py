"""Graph partition into two families of small low-diameter vertex sets.

W pairs up the endpoints of a maximal matching. W' grows star-shaped sets
around matched vertices that still have unmatched neighbors, collecting up
to ceil(|T_p|/k_p) fresh neighbors per vertex per sweep and stopping once
half the unmatched vertices are claimed. The per-sweep quota sum is recorded
as a size certificate so the set-size bound is checkable without knowing the
graph's routing number.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, diameter, induced_subgraph, is_connected, maximal_matching


@dataclass(frozen=True)
class PartitionFamilies:
    w_sets: tuple[frozenset[int], ...]
    wprime_sets: tuple[frozenset[int], ...]
    size_certificate: int

    def coverage(self) -> int:
        total = 0
        for s in self.w_sets:
            total += len(s)
        for s in self.wprime_sets:
            total += len(s)
        return total


def partition(g: Graph) -> PartitionFamilies:
    """Build the two set families; all family invariants hold on output."""
    if g.n < 2:
        raise ValueError("partition requires n >= 2")
    if not is_connected(g):
        raise ValueError("disconnected")

    matching = maximal_matching(g)
    matched_pairs = matching.sorted_pairs()
    w_sets = tuple(frozenset(pair) for pair in matched_pairs)
    matched: list[int] = []
    for u, v in matched_pairs:
        matched.extend((u, v))
    matched_set = set(matched)

    unmatched = frozenset(range(g.n)) - matched_set
    if not unmatched:
        # Perfect matching: every vertex is covered already.
        return PartitionFamilies(w_sets, (), 0)

    # S keeps matching order; only matched vertices adjacent to T qualify.
    s_list = [w for w in matched if any(x in unmatched for x in g.adjacency[w])]

    collected: dict[int, set[int]] = {w: set() for w in s_list}
    t_p = set(unmatched)
    k_p = len(s_list)
    claimed_total: set[int] = set()
    certificate = 0

    for _ in range(len(unmatched)):
        assert k_p > 0, "sweep ran out of quota-filling vertices"
        quota = -(-len(t_p) // k_p)  # ceil
        certificate += quota
        full_quota: list[int] = []
        claimed_this_sweep: set[int] = set()
        for w in s_list:
            available = [
                x
                for x in g.adjacency[w]
                if x in t_p and x not in claimed_this_sweep
            ]
            if not available:
                continue
            take = sorted(available)[:quota]
            collected[w].update(take)
            claimed_this_sweep.update(take)
            if len(take) == quota:
                full_quota.append(w)
        claimed_total |= claimed_this_sweep
        # Stop once at least half of T is claimed (integer comparison).
        if 2 * len(claimed_total) >= len(unmatched):
            wprime = tuple(
                frozenset(collected[w] | {w}) for w in s_list if collected[w]
            )
            fams = PartitionFamilies(w_sets, wprime, certificate)
            _check_invariants(g, fams)
            return fams
        t_p -= claimed_this_sweep
        k_p = len(full_quota)
    raise AssertionError("sweep loop failed to terminate within |T| iterations")


def _check_invariants(g: Graph, fams: PartitionFamilies) -> None:
    seen_w: set[int] = set()
    for s in fams.w_sets:
        assert len(s) == 2 and g.has_edge(*sorted(s))
        assert not (s & seen_w), "W sets overlap"
        seen_w |= s
    seen_wp: set[int] = set()
    for s in fams.wprime_sets:
        assert len(s) >= 2
        assert len(s) <= fams.size_certificate + 1, "W' set exceeds size certificate"
        assert not (s & seen_wp), "W' sets overlap"
        seen_wp |= s
        sub, _ = induced_subgraph(g, s)
        assert diameter(sub) <= 2
    assert 2 * (len(seen_w) + len(seen_wp)) >= g.n, "coverage below n/2"


def bottleneck_lower_bound(g: Graph, v1, v2) -> int:
    """Certified routing-number lower bound from a neighborhood bottleneck.

    Requires v1 and v2 disjoint with every neighbor of v1 inside v2; then
    half of v1's pebbles must funnel through v2, giving the bound
    ceil(floor(|v1|/2) / |v2|).
    """
    set1, set2 = set(v1), set(v2)
    if set1 & set2:
        raise ValueError(f"v1 and v2 overlap at vertex {min(set1 & set2)}")
    for u in sorted(set1):
        for w in g.adjacency[u]:
            if w not in set2:
                raise ValueError(f"vertex {u} has neighbor {w} outside v2")
    if not set1:
        return 0
    if not set2:
        raise ValueError("v2 is empty but v1 is not")
    s = len(set1) // 2
    return -(-s // len(set2))
