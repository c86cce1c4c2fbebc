import pytest

from swaproute import TopologySpec, build, rt_upper_bound
from swaproute.graphs import is_connected, is_tree
from swaproute.oracle import brute_force_rt_max
from swaproute.topologies import brick_wall_layout, cycle_grid_layout


def spec(kind, **kw):
    return TopologySpec.make(kind, **kw)


def test_path4_edges():
    assert build(spec("path", n=4)).sorted_edges() == [(0, 1), (1, 2), (2, 3)]


def test_cycle5_edges():
    assert build(spec("cycle", n=5)).sorted_edges() == [
        (0, 1), (0, 4), (1, 2), (2, 3), (3, 4),
    ]


def test_grid22_is_four_cycle():
    g = build(spec("grid", n1=2, n2=2))
    assert g.sorted_edges() == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_grid23_edges():
    g = build(spec("grid", n1=2, n2=3))
    assert g.sorted_edges() == [
        (0, 1), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (4, 5),
    ]


def test_star5_edges():
    assert build(spec("star", n=5)).sorted_edges() == [(0, 1), (0, 2), (0, 3), (0, 4)]


def test_brick_wall_single_brick_is_12_cycle():
    g = build(spec("brick_wall", n1=1, n2=1, b1=3, b2=5))
    assert g.n == 2 * 5 + 2 * 3 - 4 == 12
    assert all(g.degree(v) == 2 for v in range(g.n))
    assert is_connected(g)


def test_brick_wall_rejects_even_b2():
    with pytest.raises(ValueError, match="odd"):
        spec("brick_wall", n1=1, n2=1, b1=3, b2=4)


def test_brick_wall_rejects_b1_not_less_than_b2():
    with pytest.raises(ValueError):
        spec("brick_wall", n1=1, n2=1, b1=5, b2=5)


def test_random_tree_is_tree_and_deterministic():
    t1 = build(spec("random_tree", n=40, seed=5))
    t2 = build(spec("random_tree", n=40, seed=5))
    assert t1.edges == t2.edges
    assert is_tree(t1)


def test_random_connected_edge_count():
    g = build(spec("random_connected", n=10, m=17, seed=3))
    assert len(g.edges) == 17
    assert is_connected(g)


@pytest.mark.parametrize(
    "kind,kwargs",
    [
        ("path", dict(n=7)),
        ("cycle", dict(n=9)),
        ("complete", dict(n=5)),
        ("star", dict(n=8)),
        ("grid", dict(n1=3, n2=5)),
        ("random_tree", dict(n=20, seed=1)),
        ("random_connected", dict(n=15, m=30, seed=2)),
        ("cycle_grid", dict(rows=2, cols=3)),
        ("brick_wall", dict(n1=2, n2=2, b1=3, b2=5)),
    ],
)
def test_every_builder_output_is_connected(kind, kwargs):
    assert is_connected(build(spec(kind, **kwargs)))


def test_rt_upper_bound_values():
    assert rt_upper_bound(spec("grid", n1=4, n2=20)) == 28
    assert rt_upper_bound(spec("grid", n1=20, n2=4)) == 28
    assert rt_upper_bound(spec("path", n=7)) == 7
    assert rt_upper_bound(spec("complete", n=9)) == 2
    assert rt_upper_bound(spec("cycle", n=6)) == 6
    assert rt_upper_bound(spec("star", n=5)) == 15
    assert rt_upper_bound(spec("random_tree", n=8, seed=0)) == 24
    assert rt_upper_bound(spec("random_connected", n=8, m=12, seed=0)) == 24
    assert rt_upper_bound(spec("cycle_grid", rows=2, cols=5)) == 7 * (2 * 4 + 20)
    assert rt_upper_bound(spec("brick_wall", n1=2, n2=2, b1=3, b2=5)) == 40 * 8 * 12


@pytest.mark.parametrize("n", [3, 4, 5])
def test_path_bound_is_exact(n):
    g = build(spec("path", n=n))
    assert rt_upper_bound(spec("path", n=n)) == brute_force_rt_max(g) == n


def test_cycle_grid_layout_structure():
    layout = cycle_grid_layout(2, 5)
    assert layout.n == 80
    assert layout.virtual_rows == 4 and layout.virtual_cols == 20
    # two added in-octagon verticals per octagon plus two per vertical gap
    added = len(layout.detours)
    assert added == 2 * 10 + 2 * 1 * 5
    # every detour is a 3-edge host path realizing the added edge's ends
    host = set(layout.host_edges)
    for (u, v), (a, b, c, d) in layout.detours.items():
        assert {a, d} == {u, v}
        for x, y in ((a, b), (b, c), (c, d)):
            assert (min(x, y), max(x, y)) in host


def test_cycle_grid_classes_have_disjoint_detours():
    layout = cycle_grid_layout(3, 4)
    for label, edges in layout.classes.items():
        touched = set()
        for e in edges:
            verts = set(layout.detours[e])
            assert not (touched & verts), (label, e)
            touched |= verts


def test_brick_wall_layout_black_count_and_colors():
    layout = brick_wall_layout(2, 2, 3, 5)
    assert layout.black_count == (2 + 1) * (2 * 4 + 1)
    seen = {}
    for brick in layout.bricks:
        verts = set(brick.cycle)
        assert not (seen.get(brick.color, set()) & verts)
        seen.setdefault(brick.color, set()).update(verts)


def test_brick_wall_layout_odd_layer_has_partial_bricks():
    layout = brick_wall_layout(2, 2, 3, 5)
    widths = sorted(
        b.right_col - b.left_col for b in layout.bricks if b.layer == 1
    )
    assert widths == [2, 2, 4]  # two half bricks plus one full


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        TopologySpec.make("moebius", n=5)


def test_wrong_parameters_rejected():
    with pytest.raises(ValueError):
        TopologySpec.make("path", n=4, m=7)
    with pytest.raises(ValueError):
        TopologySpec.make("grid", n1=4)
