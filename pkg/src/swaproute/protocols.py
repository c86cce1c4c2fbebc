"""Routing protocols: ordered rounds of simultaneous pebble swaps.

A protocol stores rounds as tuples of normalized (u, v) pairs. Each round
must be a matching; validation against a graph additionally requires every
pair to be an edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import SWAP, Circuit, swap_gate
from .graphs import Graph, normalize_edge
from .perms import Permutation

Round = tuple[tuple[int, int], ...]


def normalize_round(pairs) -> Round:
    return tuple(sorted(normalize_edge(u, v) for u, v in pairs))


@dataclass(frozen=True)
class RoutingProtocol:
    n: int
    rounds: tuple[Round, ...]

    @classmethod
    def from_rounds(cls, n: int, rounds) -> "RoutingProtocol":
        return cls(n, tuple(normalize_round(r) for r in rounds))

    def __len__(self) -> int:
        return len(self.rounds)


def apply_protocol(p: RoutingProtocol) -> Permutation:
    """Realized permutation: start pebble v at vertex v, swap per round.

    Result maps start vertex to final vertex. Raises on overlapping pairs
    within a round (malformed protocol).
    """
    location = list(range(p.n))  # pebble -> vertex
    occupant = list(range(p.n))  # vertex -> pebble
    for i, rnd in enumerate(p.rounds):
        used: set[int] = set()
        for u, v in rnd:
            if u == v or not (0 <= u < p.n and 0 <= v < p.n):
                raise ValueError(f"round {i}: bad pair ({u}, {v})")
            if u in used or v in used:
                raise ValueError(f"round {i}: vertex reuse in pair ({u}, {v})")
            used.add(u)
            used.add(v)
            pu, pv = occupant[u], occupant[v]
            occupant[u], occupant[v] = pv, pu
            location[pu], location[pv] = v, u
    return Permutation(tuple(location))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    round_index: int | None = None
    pair: tuple[int, int] | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_protocol(
    g: Graph, p: RoutingProtocol, target: Permutation
) -> ValidationReport:
    """Check rounds are matchings of g-edges and the protocol realizes target."""
    if p.n != g.n or target.n != g.n:
        return ValidationReport(False, None, None, "size mismatch")
    for i, rnd in enumerate(p.rounds):
        used: set[int] = set()
        for u, v in rnd:
            if not g.has_edge(u, v):
                return ValidationReport(False, i, (u, v), "not an edge")
            if u in used or v in used:
                return ValidationReport(False, i, (u, v), "vertex reuse in round")
            used.add(u)
            used.add(v)
    realized = apply_protocol(p)
    if realized != target:
        return ValidationReport(False, None, None, "permutation mismatch")
    return ValidationReport(True)


def protocol_to_swap_circuit(p: RoutingProtocol) -> Circuit:
    """Round i becomes layer i of SWAP gates."""
    return Circuit.from_layers(
        p.n, [[swap_gate(u, v) for u, v in rnd] for rnd in p.rounds]
    )


def swap_circuit_to_protocol(c: Circuit) -> RoutingProtocol:
    """Layer i becomes round i; rejects circuits with non-SWAP gates."""
    rounds = []
    for i, layer in enumerate(c.layers):
        pairs = []
        for gate in layer:
            if gate.kind != SWAP:
                raise ValueError(f"layer {i}: non-SWAP gate {gate.id!r}")
            pairs.append(gate.qubits)
        rounds.append(pairs)
    return RoutingProtocol.from_rounds(c.n, rounds)
