"""Stable JSON encodings for every exchanged object.

All documents carry a top-level "format": 1 field; inputs missing it are
accepted, other versions rejected. Serialization is byte-deterministic
(sorted keys, fixed separators, trailing newline).
"""

from __future__ import annotations

import json
import sys
from typing import Any

from .circuits import Circuit, Gate
from .compiler import CompilationResult
from .graphs import Graph
from .partition import PartitionFamilies
from .perms import Permutation
from .protocols import RoutingProtocol
from .topologies import TopologySpec

FORMAT = 1


def dumps(payload: dict[str, Any]) -> str:
    doc = {"format": FORMAT, **payload}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _check_format(doc: Any, what: str) -> dict:
    if not isinstance(doc, dict):
        raise ValueError(f"{what}: expected a JSON object")
    version = doc.get("format", FORMAT)
    if version != FORMAT:
        raise ValueError(f"{what}: unsupported format {version!r}")
    return doc


def graph_to_json(g: Graph) -> dict[str, Any]:
    out: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if g.topology is not None:
        out["topology"] = {"kind": g.topology.kind, **dict(g.topology.params)}
    else:
        out["topology"] = None
    return out


def graph_from_json(doc: Any) -> Graph:
    doc = _check_format(doc, "graph")
    try:
        n = int(doc["n"])
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"graph: malformed document ({exc})") from None
    topo = doc.get("topology")
    spec = None
    if topo is not None:
        params = {k: v for k, v in topo.items() if k != "kind"}
        spec = TopologySpec.make(topo["kind"], **params)
    return Graph.from_edges(n, edges, spec)


def permutation_to_json(p: Permutation) -> dict[str, Any]:
    return {"dest": list(p.dest)}


def permutation_from_json(doc: Any) -> Permutation:
    doc = _check_format(doc, "permutation")
    try:
        return Permutation(tuple(int(x) for x in doc["dest"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"permutation: malformed document ({exc})") from None


def protocol_to_json(p: RoutingProtocol) -> dict[str, Any]:
    return {"n": p.n, "rounds": [[list(pair) for pair in rnd] for rnd in p.rounds]}


def protocol_from_json(doc: Any) -> RoutingProtocol:
    doc = _check_format(doc, "protocol")
    try:
        return RoutingProtocol.from_rounds(
            int(doc["n"]),
            [[(int(u), int(v)) for u, v in rnd] for rnd in doc["rounds"]],
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"protocol: malformed document ({exc})") from None


def circuit_to_json(c: Circuit) -> dict[str, Any]:
    return {
        "n": c.n,
        "layers": [
            [{"kind": g.kind, "id": g.id, "q": list(g.qubits)} for g in layer]
            for layer in c.layers
        ],
    }


def circuit_from_json(doc: Any) -> Circuit:
    doc = _check_format(doc, "circuit")
    try:
        layers = [
            [Gate(g["kind"], g["id"], tuple(int(q) for q in g["q"])) for g in layer]
            for layer in doc["layers"]
        ]
        return Circuit.from_layers(int(doc["n"]), layers)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"circuit: malformed document ({exc})") from None


def families_to_json(f: PartitionFamilies) -> dict[str, Any]:
    return {
        "w": [sorted(s) for s in f.w_sets],
        "wprime": [sorted(s) for s in f.wprime_sets],
        "certificate": f.size_certificate,
    }


def families_from_json(doc: Any) -> PartitionFamilies:
    doc = _check_format(doc, "families")
    try:
        return PartitionFamilies(
            tuple(frozenset(int(v) for v in s) for s in doc["w"]),
            tuple(frozenset(int(v) for v in s) for s in doc["wprime"]),
            int(doc["certificate"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"families: malformed document ({exc})") from None


def result_to_json(r: CompilationResult) -> dict[str, Any]:
    out = {
        "circuit": circuit_to_json(r.circuit),
        "final_map": permutation_to_json(r.final_map),
        "per_layer_depths": list(r.per_layer_depths),
        "restore_mode": r.restore_mode,
    }
    if r.iterations_per_layer is not None:
        out["iterations_per_layer"] = list(r.iterations_per_layer)
    return out


def result_from_json(doc: Any) -> CompilationResult:
    doc = _check_format(doc, "result")
    try:
        iters = doc.get("iterations_per_layer")
        return CompilationResult(
            circuit_from_json({"format": FORMAT, **doc["circuit"]}),
            permutation_from_json({"format": FORMAT, **doc["final_map"]}),
            tuple(int(d) for d in doc["per_layer_depths"]),
            doc["restore_mode"],
            tuple(iters) if iters is not None else None,
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"result: malformed document ({exc})") from None


def load_path(path: str) -> Any:
    """Parse JSON from a file or '-' for stdin, with location on errors."""
    name = "<stdin>" if path == "-" else path
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ValueError(f"{name}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"{name}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
