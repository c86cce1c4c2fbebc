from random import Random

import pytest

from swaproute.circuits import (
    Circuit,
    depth,
    one_qubit,
    random_layered_circuit,
    relayer,
    swap_gate,
    two_qubit,
)


def test_layer_rejects_qubit_reuse():
    with pytest.raises(ValueError, match="used twice"):
        Circuit.from_layers(3, [[two_qubit("a", 0, 1), one_qubit("b", 1)]])


def test_gate_rejects_duplicate_qubits():
    with pytest.raises(ValueError):
        two_qubit("a", 1, 1)


def test_depth_empty():
    assert depth(Circuit.from_layers(3, [])) == 0


def test_depth_merges_disjoint_layers():
    c = Circuit.from_layers(4, [[two_qubit("a", 0, 1)], [two_qubit("b", 2, 3)]])
    assert depth(c) == 1


def test_depth_sequential_chain():
    layers = [[two_qubit(f"g{i}", 0, (i % 3) + 1)] for i in range(5)]
    assert depth(Circuit.from_layers(4, layers)) == 5


def test_depth_swap_as_cnots():
    c = Circuit.from_layers(2, [[swap_gate(0, 1)]])
    assert depth(c) == 1
    assert depth(c, swap_as_cnots=True) == 3


def test_relayer_preserves_per_qubit_order():
    c = Circuit.from_layers(
        3, [[one_qubit("a", 0)], [one_qubit("b", 1)], [two_qubit("c", 0, 1)]]
    )
    packed = relayer(c)
    assert depth(packed) == 2
    assert [g.id for g in packed.gates()] == ["a", "b", "c"]
    assert len(packed.layers[0]) == 2


def test_random_circuit_is_valid_and_deterministic():
    c1 = random_layered_circuit(10, 8, Random(4))
    c2 = random_layered_circuit(10, 8, Random(4))
    assert c1 == c2
    ids = [g.id for g in c1.gates()]
    assert len(ids) == len(set(ids))
