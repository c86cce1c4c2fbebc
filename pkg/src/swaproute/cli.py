"""Command-line front end.

Subcommands: topo, route, partition, compile, verify, oracle, report.
Exit codes: 0 ok, 1 verification/validation failure, 2 usage or input
error, 3 oracle budget refusal. All randomness sits behind explicit
--seed flags; identical inputs and seeds give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .circuits import depth
from .compiler import (
    check_compliance,
    compile_matching,
    compile_partition,
    matching_depth_bound,
    verify_equivalence,
)
from .graphs import Graph
from .oracle import (
    BudgetExceeded,
    OracleBudget,
    brute_force_rt,
    brute_force_rt_max,
    doh_swap_circuit,
    hardness_reduction,
)
from .partition import partition
from .perms import Permutation
from .protocols import validate_protocol
from .routers import route
from .topologies import KINDS, TopologySpec, build, rt_upper_bound

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swaproute",
        description="SWAP-network routing and connectivity-constrained compilation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    topo = sub.add_parser("topo", help="build constraint graphs")
    topo_sub = topo.add_subparsers(dest="topo_command", required=True)
    tb = topo_sub.add_parser("build", help="emit a canonical topology as Graph JSON")
    tb.add_argument("--kind", required=True, choices=KINDS)
    tb.add_argument("--n", type=int)
    tb.add_argument("--m", type=int)
    tb.add_argument("--n1", type=int)
    tb.add_argument("--n2", type=int)
    tb.add_argument("--b1", type=int)
    tb.add_argument("--b2", type=int)
    tb.add_argument("--rows", type=int)
    tb.add_argument("--cols", type=int)
    tb.add_argument("--seed", type=int)
    tb.add_argument("--out", default="-")

    rt = sub.add_parser("route", help="route a permutation on a graph")
    rt.add_argument("--graph", required=True)
    rt.add_argument("--perm", required=True)
    rt.add_argument("--out", default="-")

    pt = sub.add_parser("partition", help="partition a graph into set families")
    pt.add_argument("--graph", required=True)
    pt.add_argument("--out", default="-")

    cp = sub.add_parser("compile", help="compile a circuit onto a graph")
    cp.add_argument("--graph", required=True)
    cp.add_argument("--circuit", required=True)
    cp.add_argument("--strategy", choices=("matching", "partition"), default="matching")
    cp.add_argument("--no-restore", action="store_true",
                    help="defer restoration to a declared final map")
    cp.add_argument("--out", default="-")

    vf = sub.add_parser("verify", help="check a compilation result against its original")
    vf.add_argument("--original", required=True)
    vf.add_argument("--compiled", required=True)
    vf.add_argument("--graph", help="also check every 2-qubit gate is on an edge")

    orc = sub.add_parser("oracle", help="brute-force references at desk scale")
    orc_sub = orc.add_subparsers(dest="oracle_command", required=True)
    for name in ("rt", "rtmax", "doh", "reduce"):
        o = orc_sub.add_parser(name)
        o.add_argument("--graph", required=True)
        if name in ("rt", "reduce"):
            o.add_argument("--perm", required=True)
        if name == "doh":
            o.add_argument("--circuit", required=True)
        if name == "reduce":
            o.add_argument("-k", type=int, required=True)
        o.add_argument("--max-n", type=int, default=6)
        o.add_argument("--max-states", type=int, default=1_000_000)
        o.add_argument("--out", default="-")

    rp = sub.add_parser("report", help="sweep monitored metrics into CSV + figures")
    rp.add_argument("--out-dir", required=True)
    rp.add_argument("--seed", type=int, default=0)
    return parser


def _topo_build(args) -> int:
    params = {
        name: getattr(args, name)
        for name in ("n", "m", "n1", "n2", "b1", "b2", "rows", "cols", "seed")
        if getattr(args, name) is not None
    }
    spec = TopologySpec.make(args.kind, **params)
    g = build(spec)
    jsonio.write_out(jsonio.dumps(jsonio.graph_to_json(g)), args.out)
    return EXIT_OK


def _route(args) -> int:
    g = jsonio.graph_from_json(jsonio.load_path(args.graph))
    target = jsonio.permutation_from_json(jsonio.load_path(args.perm))
    proto = route(g, target)
    report = validate_protocol(g, proto, target)
    if not report:
        print(f"route: produced invalid protocol: {report.reason}", file=sys.stderr)
        return EXIT_VIOLATION
    jsonio.write_out(jsonio.dumps(jsonio.protocol_to_json(proto)), args.out)
    return EXIT_OK


def _partition(args) -> int:
    g = jsonio.graph_from_json(jsonio.load_path(args.graph))
    fams = partition(g)
    jsonio.write_out(jsonio.dumps(jsonio.families_to_json(fams)), args.out)
    return EXIT_OK


def _compile(args) -> int:
    g = jsonio.graph_from_json(jsonio.load_path(args.graph))
    c = jsonio.circuit_from_json(jsonio.load_path(args.circuit))
    restore = "virtual" if args.no_restore else "physical"
    if args.strategy == "matching":
        result = compile_matching(c, g, restore=restore)
    else:
        result = compile_partition(c, g, partition(g), restore=restore)
    bound = matching_depth_bound(c, g)
    print(result.summary(c, g, bound), file=sys.stderr)
    jsonio.write_out(jsonio.dumps(jsonio.result_to_json(result)), args.out)
    return EXIT_OK


def _verify(args) -> int:
    original = jsonio.circuit_from_json(jsonio.load_path(args.original))
    result = jsonio.result_from_json(jsonio.load_path(args.compiled))
    report = verify_equivalence(original, result.circuit, result.final_map)
    if not report:
        print(f"verify: {report.message} (gate {report.gate_id}, "
              f"expected {report.expected}, actual {report.actual})", file=sys.stderr)
        return EXIT_VIOLATION
    if args.graph:
        g = jsonio.graph_from_json(jsonio.load_path(args.graph))
        comp = check_compliance(g, result.circuit)
        if not comp:
            print(f"verify: {comp.message} (gate {comp.gate_id} on {comp.actual})",
                  file=sys.stderr)
            return EXIT_VIOLATION
    print("verify: ok", file=sys.stderr)
    return EXIT_OK


def _oracle(args) -> int:
    budget = OracleBudget(max_n=args.max_n, max_states=args.max_states)
    g = jsonio.graph_from_json(jsonio.load_path(args.graph))
    if args.oracle_command == "rt":
        target = jsonio.permutation_from_json(jsonio.load_path(args.perm))
        value = brute_force_rt(g, target, budget)
        jsonio.write_out(jsonio.dumps({"rt": value}), args.out)
    elif args.oracle_command == "rtmax":
        value = brute_force_rt_max(g, budget)
        jsonio.write_out(jsonio.dumps({"rtmax": value}), args.out)
    elif args.oracle_command == "doh":
        c = jsonio.circuit_from_json(jsonio.load_path(args.circuit))
        value = doh_swap_circuit(g, c, budget)
        jsonio.write_out(
            jsonio.dumps(
                {
                    "doh": {
                        "numerator": value.numerator,
                        "denominator": value.denominator,
                        "value": float(value),
                    }
                }
            ),
            args.out,
        )
    else:  # reduce
        target = jsonio.permutation_from_json(jsonio.load_path(args.perm))
        circuit, alpha = hardness_reduction(g, target, args.k)
        jsonio.write_out(
            jsonio.dumps(
                {
                    "circuit": jsonio.circuit_to_json(circuit),
                    "alpha": {
                        "numerator": alpha.numerator,
                        "denominator": alpha.denominator,
                        "value": float(alpha),
                    },
                }
            ),
            args.out,
        )
    return EXIT_OK


def _report(args) -> int:
    from .report import run_report

    paths = run_report(args.out_dir, seed=args.seed)
    for p in paths:
        print(p, file=sys.stderr)
    return EXIT_OK


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "topo":
            return _topo_build(args)
        if args.command == "route":
            return _route(args)
        if args.command == "partition":
            return _partition(args)
        if args.command == "compile":
            return _compile(args)
        if args.command == "verify":
            return _verify(args)
        if args.command == "oracle":
            return _oracle(args)
        if args.command == "report":
            return _report(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
