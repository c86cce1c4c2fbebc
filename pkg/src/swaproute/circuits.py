"""Layered circuit representation with opaque gate labels.

Gates carry no semantics beyond their kind, label and qubit tuple; two-qubit
gate qubit order is significant. A layer may not touch a qubit twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

ONE_QUBIT = "one_qubit"
TWO_QUBIT = "two_qubit"
SWAP = "swap"

_KINDS = (ONE_QUBIT, TWO_QUBIT, SWAP)


@dataclass(frozen=True)
class Gate:
    kind: str
    id: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = 1 if self.kind == ONE_QUBIT else 2
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind} gate needs {want} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"gate qubits must be distinct, got {self.qubits}")


def one_qubit(label: str, q: int) -> Gate:
    return Gate(ONE_QUBIT, label, (q,))


def two_qubit(label: str, a: int, b: int) -> Gate:
    return Gate(TWO_QUBIT, label, (a, b))


def swap_gate(a: int, b: int) -> Gate:
    return Gate(SWAP, "swap", (a, b))


@dataclass(frozen=True)
class Circuit:
    n: int
    layers: tuple[tuple[Gate, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("qubit count must be >= 1")
        for i, layer in enumerate(self.layers):
            used: set[int] = set()
            for gate in layer:
                for q in gate.qubits:
                    if not (0 <= q < self.n):
                        raise ValueError(f"layer {i}: qubit {q} out of range")
                    if q in used:
                        raise ValueError(f"layer {i}: qubit {q} used twice")
                    used.add(q)

    @classmethod
    def from_layers(cls, n: int, layers) -> "Circuit":
        return cls(n, tuple(tuple(layer) for layer in layers))

    def gates(self):
        for layer in self.layers:
            yield from layer

    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def is_swap_only(self) -> bool:
        return all(g.kind == SWAP for g in self.gates())


def depth(c: Circuit, swap_as_cnots: bool = False) -> int:
    """Depth after greedy re-layering.

    Each gate lands in the earliest slot where its qubits are free,
    preserving per-qubit order. With swap_as_cnots, a SWAP occupies three
    slots (its standard CNOT expansion), giving the CNOT-depth metric.
    """
    free = [0] * c.n
    total = 0
    for gate in c.gates():
        start = max(free[q] for q in gate.qubits)
        width = 3 if (swap_as_cnots and gate.kind == SWAP) else 1
        for q in gate.qubits:
            free[q] = start + width
        total = max(total, start + width)
    return total


def relayer(c: Circuit) -> Circuit:
    """Repack gates greedily into the minimal per-qubit-order-preserving layers."""
    free = [0] * c.n
    slots: list[list[Gate]] = []
    for gate in c.gates():
        start = max(free[q] for q in gate.qubits)
        while len(slots) <= start:
            slots.append([])
        slots[start].append(gate)
        for q in gate.qubits:
            free[q] = start + 1
    return Circuit.from_layers(c.n, slots)


def random_layered_circuit(
    n: int, n_layers: int, rng: Random, two_qubit_fraction: float = 0.5
) -> Circuit:
    """Random test circuit: each layer fills qubits with a 1q/2q mix.

    Gate labels are unique across the circuit so equivalence checks can
    match compiled gates back to their originals.
    """
    layers: list[list[Gate]] = []
    counter = 0
    for _ in range(n_layers):
        qubits = list(range(n))
        rng.shuffle(qubits)
        layer: list[Gate] = []
        i = 0
        while i < len(qubits):
            if i + 1 < len(qubits) and rng.random() < two_qubit_fraction:
                layer.append(two_qubit(f"g{counter}", qubits[i], qubits[i + 1]))
                i += 2
            else:
                if rng.random() < 0.7:
                    layer.append(one_qubit(f"g{counter}", qubits[i]))
                i += 1
            counter += 1
        layers.append(layer)
    return Circuit.from_layers(n, layers)
