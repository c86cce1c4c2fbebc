from fractions import Fraction
from itertools import permutations
from random import Random

import pytest

from swaproute import (
    BudgetExceeded,
    Circuit,
    Graph,
    OracleBudget,
    Permutation,
    TopologySpec,
    apply_protocol,
    brute_force_rt,
    brute_force_rt_max,
    build,
    decompose_two_involutions,
    doh_swap_circuit,
    hardness_reduction,
    protocol_to_swap_circuit,
    route,
    swap_circuit_to_protocol,
)
from swaproute.circuits import swap_gate
from swaproute.oracle import enumerate_matchings, hardest_permutation
from tests.conftest import all_perms, random_perm


def path(n):
    return build(TopologySpec.make("path", n=n))


def test_enumerate_matchings_counts():
    # Matchings of P_4 (3 edges): {01},{12},{23},{01,23} = 4 non-empty
    assert len(enumerate_matchings(path(4))) == 4
    # K_4: 6 single edges + 3 perfect matchings
    k4 = build(TopologySpec.make("complete", n=4))
    assert len(enumerate_matchings(k4)) == 9


def test_rt_identity_zero():
    assert brute_force_rt(path(4), Permutation.identity(4)) == 0


def test_rt_p3_reversal():
    assert brute_force_rt(path(3), Permutation((2, 1, 0))) == 3


def test_rt_c4_antipodal():
    g = build(TopologySpec.make("cycle", n=4))
    assert brute_force_rt(g, Permutation((2, 3, 0, 1))) == 2


def test_rtmax_values():
    assert brute_force_rt_max(path(3)) == 3
    assert brute_force_rt_max(path(4)) == 4
    k3 = build(TopologySpec.make("complete", n=3))
    assert brute_force_rt_max(k3) == 2


def test_rt_budget_refusal():
    g = path(8)
    with pytest.raises(BudgetExceeded):
        brute_force_rt(g, Permutation.identity(8), OracleBudget(max_n=6))


def test_bfs_determinism():
    g = build(TopologySpec.make("cycle", n=5))
    vals = {brute_force_rt_max(g) for _ in range(3)}
    assert len(vals) == 1


def test_doh_single_swap_on_edge():
    g = path(3)
    c = Circuit.from_layers(3, [[swap_gate(0, 1)]])
    assert doh_swap_circuit(g, c) == Fraction(1)


def test_doh_reversal_is_rt_over_one():
    # The reversal on 3 elements is the involution (0 2): its minimal swap
    # circuit has depth 1, so the overhead is the full routing number.
    g = path(3)
    c = Circuit.from_layers(3, [[swap_gate(0, 2)]])
    assert doh_swap_circuit(g, c) == Fraction(3, 1)


def test_doh_depth_two_circuit():
    g = path(3)
    c = Circuit.from_layers(3, [[swap_gate(0, 1)], [swap_gate(1, 2)]])
    realized = apply_protocol(swap_circuit_to_protocol(c))
    rt = brute_force_rt(g, realized)
    assert doh_swap_circuit(g, c) == Fraction(rt, 2)


def test_doh_cancelling_pair_is_zero():
    g = path(3)
    c = Circuit.from_layers(3, [[swap_gate(0, 1)], [swap_gate(0, 1)]])
    assert doh_swap_circuit(g, c) == 0


def test_doh_rejects_non_swap_and_empty():
    g = path(2)
    from swaproute.circuits import two_qubit

    with pytest.raises(ValueError, match="non-SWAP"):
        doh_swap_circuit(g, Circuit.from_layers(2, [[two_qubit("x", 0, 1)]]))
    with pytest.raises(ValueError, match="zero-depth"):
        doh_swap_circuit(g, Circuit.from_layers(2, []))


def test_hardness_reduction_involution():
    g = path(3)
    c, alpha = hardness_reduction(g, Permutation.from_cycles(3, [[0, 1]]), 3)
    assert alpha == Fraction(3)
    assert len(c.layers) == 1 and len(c.layers[0]) == 1


def test_hardness_reduction_three_cycle():
    g = build(TopologySpec.make("complete", n=4))
    p = Permutation.from_cycles(4, [[0, 1, 2]])
    c, alpha = hardness_reduction(g, p, 4)
    assert alpha == Fraction(2)
    assert len(c.layers) == 2
    assert apply_protocol(swap_circuit_to_protocol(c)) == p


def test_hardness_reduction_rejects_identity_and_small_k():
    g = path(3)
    with pytest.raises(ValueError, match="identity"):
        hardness_reduction(g, Permutation.identity(3), 3)
    with pytest.raises(ValueError, match="k"):
        hardness_reduction(g, Permutation((2, 1, 0)), 2)


@pytest.mark.parametrize(
    "kind,kwargs",
    [
        ("path", dict(n=3)),
        ("path", dict(n=4)),
        ("cycle", dict(n=4)),
        ("complete", dict(n=4)),
    ],
)
def test_hardness_reduction_biconditional(kind, kwargs):
    g = build(TopologySpec.make(kind, **kwargs))
    for p in all_perms(g.n):
        if p.is_identity():
            continue
        rt = brute_force_rt(g, p)
        for k in (3, 4, 5):
            c, alpha = hardness_reduction(g, p, k)
            assert apply_protocol(swap_circuit_to_protocol(c)) == p
            assert (rt <= k) == (doh_swap_circuit(g, c) <= alpha), (kind, p.dest, k)


def test_routers_never_beat_oracle(small_graph_zoo):
    rng = Random(2)
    for g in small_graph_zoo:
        for _ in range(6):
            p = random_perm(g.n, rng)
            proto = route(g, p)
            assert len(proto.rounds) >= brute_force_rt(g, apply_protocol(proto))


def test_depth_overhead_lower_bound_property(small_graph_zoo):
    # The hardest permutation's depth-<=2 circuit witnesses doh >= rt/2.
    for g in small_graph_zoo:
        rt_max = brute_force_rt_max(g)
        if rt_max == 0:
            continue
        pstar = hardest_permutation(g)
        assert brute_force_rt(g, pstar) == rt_max
        s1, s2 = decompose_two_involutions(pstar)
        layers = [
            [swap_gate(u, v) for u, v in s.transpositions()]
            for s in (s2, s1)
            if not s.is_identity()
        ]
        cstar = Circuit.from_layers(g.n, layers)
        assert doh_swap_circuit(g, cstar) >= Fraction(rt_max, 2)


def test_oracle_agrees_with_protocol_round_counts():
    g = build(TopologySpec.make("cycle", n=5))
    rng = Random(44)
    for _ in range(10):
        p = random_perm(5, rng)
        proto = route(g, p)
        assert brute_force_rt(g, p) <= len(proto.rounds)
