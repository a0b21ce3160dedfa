"""Command-line front end.

Verbs: normalize, classify, dual-check, verify-mes, make-mes, relations-test,
simulate.  Exit codes: 0 success / verdict true, 1 verdict false, 2 usage or
parse error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .classify import classify
from .duality import verify_dual_equivalence
from .entangle import RingState, build_mes, mes_verdict
from .gf import Field
from .rewrite import (
    CircuitParseError,
    canonicalize,
    graph_from_json_dict,
    graph_to_dot,
    graph_to_json_dict,
    parse_circuit,
    relations_suite,
)
from .simulator import (
    ResourceGuardError,
    dump_state,
    parse_state_dump,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _field_arg(text: str) -> Field:
    return Field.from_descriptor(text)


# ---------------------------------------------------------------------------
# Verb handlers
# ---------------------------------------------------------------------------

def cmd_normalize(args) -> int:
    circuit = parse_circuit(Path(args.circuit).read_text())
    perm, graph = canonicalize(circuit)
    verification = None
    if args.verify:
        original = circuit.simulate(args.tolerance)
        rebuilt = graph.state(args.tolerance)
        dev = float(np.max(np.abs(original.amps - rebuilt.amps)))
        verification = {"equal": dev <= args.tolerance, "max_deviation": dev}
    if args.format == "dot":
        out = graph_to_dot(graph)
        if verification is not None:
            status = "OK" if verification["equal"] else "MISMATCH"
            out += f"// verification: {status} (max deviation {verification['max_deviation']:.3e})\n"
        print(out, end="")
    elif args.format == "text":
        print(f"permutation: {' '.join(str(w) for w in perm)}")
        print(f"S: {' '.join(str(w) for w in graph.s_wires)}")
        print(f"O: {' '.join(str(w) for w in graph.o_wires)}")
        for i, j, b in graph.edges:
            print(f"edge {i} -> {j} label {b}")
        if verification is not None:
            status = "OK" if verification["equal"] else "MISMATCH"
            print(f"verification: {status} (max deviation {verification['max_deviation']:.3e})")
    else:
        _emit_json({
            "permutation": list(perm),
            "graph": graph_to_json_dict(graph),
            "verification": verification,
        })
    if verification is not None and not verification["equal"]:
        return EXIT_FALSE
    return EXIT_OK


def cmd_classify(args) -> int:
    report = classify(args.field, args.n, args.tolerance)
    if args.format == "text":
        print(f"field {report['field']}  N={report['n']}  classes={report['count']}")
        for cls in report["classes"]:
            orbit_counts = ", ".join(str(o["count"]) for o in cls["signature_orbits"])
            print(
                f"  class |S|={cls['sources']}: {cls['graphs']} graphs, "
                f"{len(cls['signature_orbits'])} signature orbit(s) [{orbit_counts}]"
            )
    else:
        _emit_json(report)
    return EXIT_OK


def cmd_dual_check(args) -> int:
    graph = graph_from_json_dict(json.loads(Path(args.graph).read_text()))
    report = verify_dual_equivalence(graph, args.tolerance)
    _emit_json(report.to_dict())
    return EXIT_OK if report.signature_match else EXIT_FALSE


def cmd_verify_mes(args) -> int:
    amps, d, n = parse_state_dump(Path(args.state).read_text())
    report = mes_verdict(RingState(d, n, amps), args.tolerance)
    _emit_json(report.to_dict())
    return EXIT_OK if report.verdict else EXIT_FALSE


def cmd_make_mes(args) -> int:
    built = build_mes(args.d, args.tolerance)
    if not built.ok:
        print(f"refused: {built.reason}", file=sys.stderr)
        _emit_json(built.to_dict())
        return EXIT_FALSE
    state = built.state
    text = dump_state(state.amps, state.d, state.n, header=[f"construction {built.construction}"])
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output} ({built.construction})")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_relations_test(args) -> int:
    fields = [_prime_power_field(int(d_str)) for d_str in args.fields.split(",")]
    all_ok = True
    reports = []
    for fld in fields:
        exhaustive = fld.d <= 5
        report = relations_suite(fld, exhaustive=exhaustive, samples=args.samples,
                                 seed=args.seed, tol=args.tolerance)
        reports.append(report)
        all_ok &= report["ok"]
        if args.format == "text":
            print(f"field {fld.descriptor()} ({report['mode']}):")
            for name in sorted(report["relations"]):
                entry = report["relations"][name]
                status = "ok" if entry["ok"] else f"FAIL at {entry['first_failure']}"
                print(f"  {name:24s} {entry['checked']:5d} cases  {status}")
    if args.format == "json":
        _emit_json(reports)
    return EXIT_OK if all_ok else EXIT_FALSE


def cmd_simulate(args) -> int:
    circuit = parse_circuit(Path(args.circuit).read_text())
    state = circuit.simulate(args.tolerance)
    print(dump_state(state.amps, state.d, state.n), end="")
    return EXIT_OK


def _prime_power_field(d: int) -> Field:
    for p in range(2, d + 1):
        if d % p == 0:
            n = 0
            m = d
            while m % p == 0:
                m //= p
                n += 1
            if m != 1:
                raise ValueError(f"{d} is not a prime power")
            return Field(p, n)
    raise ValueError(f"{d} is not a prime power")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quditgraph", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p):
        p.add_argument("--tolerance", type=float, default=1e-10)

    p = sub.add_parser("normalize", help="reduce a C-only circuit file to its bipartite graph")
    p.add_argument("circuit")
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p.add_argument("--verify", action="store_true", help="re-simulate and compare dense states")
    add_common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("classify", help="enumerate and classify graph states at small N")
    p.add_argument("n", type=int)
    p.add_argument("--field", type=_field_arg, required=True, metavar="'p n [poly]'")
    p.add_argument("--format", choices=["json", "text"], default="json")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dual-check", help="verify a graph against its dual (JSON graph input)")
    p.add_argument("graph")
    add_common(p)
    p.set_defaults(func=cmd_dual_check)

    p = sub.add_parser("verify-mes", help="check a state dump for 4-party maximal entanglement")
    p.add_argument("state")
    add_common(p)
    p.set_defaults(func=cmd_verify_mes)

    p = sub.add_parser("make-mes", help="construct a maximally entangled 4-party state")
    p.add_argument("d", type=int)
    p.add_argument("--output", help="write the state dump to this path")
    add_common(p)
    p.set_defaults(func=cmd_make_mes)

    p = sub.add_parser("relations-test", help="dense-operator check of all rewrite rules")
    p.add_argument("--fields", default="2,3,4,5", help="comma-separated prime powers")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000, help="random tuples for d > 5")
    p.add_argument("--format", choices=["json", "text"], default="text")
    add_common(p)
    p.set_defaults(func=cmd_relations_test)

    p = sub.add_parser("simulate", help="dense-simulate a circuit file and dump the state")
    p.add_argument("circuit")
    add_common(p)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CircuitParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
