from itertools import combinations
from random import Random

import pytest

from swaproute import (
    Graph,
    TopologySpec,
    bottleneck_lower_bound,
    brute_force_rt_max,
    build,
    diameter,
    induced_subgraph,
    partition,
)


def test_path4_families():
    f = partition(build(TopologySpec.make("path", n=4)))
    assert [sorted(s) for s in f.w_sets] == [[0, 1], [2, 3]]
    assert f.wprime_sets == ()
    assert f.coverage() == 4


def test_triangle_families_match_hand_execution():
    g = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
    f = partition(g)
    assert [sorted(s) for s in f.w_sets] == [[0, 1]]
    assert [sorted(s) for s in f.wprime_sets] == [[0, 2]]
    assert f.size_certificate == 1


def test_star_families_match_hand_execution():
    g = build(TopologySpec.make("star", n=6))
    f = partition(g)
    assert [sorted(s) for s in f.w_sets] == [[0, 1]]
    assert [sorted(s) for s in f.wprime_sets] == [[0, 2, 3, 4, 5]]
    assert f.size_certificate == 4


def test_partition_rejects_tiny_or_disconnected():
    with pytest.raises(ValueError):
        partition(Graph.from_edges(1, []))
    with pytest.raises(ValueError, match="disconnected"):
        partition(Graph.from_edges(4, [(0, 1), (2, 3)]))


def _check_families(g, f):
    seen = set()
    for s in f.w_sets:
        assert len(s) == 2
        u, v = sorted(s)
        assert g.has_edge(u, v)
        assert not (s & seen)
        seen |= s
    seen_p = set()
    for s in f.wprime_sets:
        assert 2 <= len(s) <= f.size_certificate + 1
        assert not (s & seen_p)
        seen_p |= s
        sub, _ = induced_subgraph(g, s)
        assert diameter(sub) <= 2
    assert 2 * (len(seen) + len(seen_p)) >= g.n


def test_invariants_on_seeded_random_graphs():
    rng = Random(1234)
    for i in range(80):
        n = rng.randrange(4, 129)
        m = rng.randrange(n - 1, min(n * (n - 1) // 2, 4 * n) + 1)
        g = build(TopologySpec.make("random_connected", n=n, m=m, seed=i))
        _check_families(g, partition(g))


def test_invariants_on_structured_graphs():
    for spec in [
        TopologySpec.make("star", n=50),
        TopologySpec.make("path", n=33),
        TopologySpec.make("grid", n1=5, n2=9),
        TopologySpec.make("cycle", n=17),
        TopologySpec.make("complete", n=12),
        TopologySpec.make("random_tree", n=64, seed=9),
    ]:
        g = build(spec)
        _check_families(g, partition(g))


def test_bottleneck_star_example():
    g = build(TopologySpec.make("star", n=6))
    assert bottleneck_lower_bound(g, [1, 2, 3, 4, 5], [0]) == 2


def test_bottleneck_empty_v1():
    g = build(TopologySpec.make("star", n=6))
    assert bottleneck_lower_bound(g, [], [0]) == 0


def test_bottleneck_p3():
    g = build(TopologySpec.make("path", n=3))
    assert bottleneck_lower_bound(g, [0, 2], [1]) == 1
    assert brute_force_rt_max(g) >= 1


def test_bottleneck_rejects_overlap():
    g = build(TopologySpec.make("path", n=3))
    with pytest.raises(ValueError, match="overlap"):
        bottleneck_lower_bound(g, [0, 1], [1, 2])


def test_bottleneck_rejects_outside_neighbor():
    g = build(TopologySpec.make("path", n=4))
    with pytest.raises(ValueError, match="neighbor"):
        bottleneck_lower_bound(g, [0, 2], [1])  # vertex 2 also neighbors 3


def test_bottleneck_never_exceeds_oracle(small_graph_zoo):
    for g in small_graph_zoo:
        if g.n > 5:
            continue
        rt = brute_force_rt_max(g)
        verts = list(range(g.n))
        for k1 in range(1, g.n):
            for v1 in combinations(verts, k1):
                nbrs = {w for u in v1 for w in g.adjacency[u]}
                if nbrs & set(v1):
                    continue
                v2 = sorted(nbrs)
                if not v2:
                    continue
                assert bottleneck_lower_bound(g, v1, v2) <= rt
