"""Command-line front end: decide | solve | verify | oracle | gen | bench.

Exit codes: 0 for YES/success, 1 for NO/invalid, 2 for any error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .errors import InputError, ParseError, ResourceLimit
from .generators import FAMILIES, generate
from .io_formats import (
    decomposition_to_dot,
    parse_gr,
    parse_td,
    parse_treedepth_decomposition,
    write_gr,
    write_report,
    write_treedepth_decomposition,
)
from .oracle import oracle_treedepth
from .solvers import SolverConfig, exact_treedepth, solve_chordal, solve_fast, solve_simple
from .tdd import validate_tdd
from .treedec import TreeDecomposition


def _read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_graph(path):
    return parse_gr(_read(path))


def _load_td(path):
    bags, edges, _ = parse_td(_read(path))
    return TreeDecomposition(bags, edges)


def _config(args):
    return SolverConfig(
        variant=args.variant,
        decide_only=getattr(args, "decide_only", False),
        naive=getattr(args, "naive", False),
    )


def _run_variant(g, t, args, instance):
    config = _config(args)
    if args.variant == "simple":
        return solve_simple(g, t, config, instance)
    if args.variant == "chordal":
        return solve_chordal(g, t, config, instance)
    if args.variant == "given":
        if not args.td:
            raise InputError("--variant given requires --td FILE")
        return solve_fast(g, t, _load_td(args.td), config, instance)
    td = _load_td(args.td) if args.td else None
    return solve_fast(g, t, td, config, instance)


def _emit_witness(args, outcome):
    if outcome.decomposition is None:
        return
    if getattr(args, "out", None):
        _write(args.out, write_treedepth_decomposition(outcome.decomposition))
    if getattr(args, "dot", None):
        _write(args.dot, decomposition_to_dot(outcome.decomposition))


def cmd_decide(args):
    g = _load_graph(args.graph)
    outcome = _run_variant(g, args.t, args, args.graph)
    print("YES" if outcome.answer else "NO")
    print(write_report(outcome.report), end="")
    if outcome.answer:
        _emit_witness(args, outcome)
        return 0
    return 1


def cmd_solve(args):
    g = _load_graph(args.graph)
    config = _config(args)
    if args.variant == "given" and not args.td:
        raise InputError("--variant given requires --td FILE")
    td = _load_td(args.td) if args.td else None
    outcome = exact_treedepth(g, args.variant, td, config, args.graph)
    print(outcome.value)
    print(write_report(outcome.report), end="")
    _emit_witness(args, outcome)
    return 0


def cmd_verify(args):
    g = _load_graph(args.graph)
    declared, t = parse_treedepth_decomposition(_read(args.tree))
    if t.n_nodes != g.n or sorted(t.label) != list(range(g.n)):
        print(f"INVALID: decomposition does not cover vertices 1..{g.n}")
        return 1
    bad = validate_tdd(g, t)
    if bad is not None:
        if bad.kind == "uncovered-edge":
            u, v = bad.witness
            print(f"INVALID: edge {u + 1}-{v + 1} joins incomparable nodes")
        else:
            print(f"INVALID: {bad.kind} ({bad.witness})")
        return 1
    h = t.height()
    if h != declared:
        print(f"INVALID: declared height {declared}, actual {h}")
        return 1
    print(h)
    return 0


def cmd_oracle(args):
    g = _load_graph(args.graph)
    value, witness = oracle_treedepth(g)
    print(value)
    if args.out:
        _write(args.out, write_treedepth_decomposition(witness))
    if args.dot:
        _write(args.dot, decomposition_to_dot(witness))
    return 0


def cmd_gen(args):
    g = generate(args.family, args.size, args.seed, args.k, args.m)
    text = write_gr(g)
    if args.out:
        _write(args.out, text)
    else:
        print(text, end="")
    return 0


def cmd_bench(args):
    with open(args.manifest, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    if not isinstance(manifest, list):
        raise InputError("manifest must be a JSON list")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["instance", "variant", "n", "width", "t", "answer",
         "peak_table_size", "wall_time_s"]
    )
    for item in manifest:
        instance = item.get("file", "?")
        variant = item.get("variant", "fast")
        t = item.get("t")
        started = time.perf_counter()
        try:
            g = _load_graph(instance)
            td = _load_td(item["td"]) if "td" in item else None
            if t is None:
                out = exact_treedepth(g, variant, td, None, instance)
            elif variant == "simple":
                out = solve_simple(g, t, None, instance)
            elif variant == "chordal":
                out = solve_chordal(g, t, None, instance)
            else:
                out = solve_fast(g, t, td, None, instance)
            r = out.report
            writer.writerow(
                [r.instance, r.variant, r.n, r.width, r.t, r.answer,
                 r.peak_table_size, f"{r.wall_time_s:.6f}"]
            )
        except Exception as e:  # noqa: BLE001 - a bad instance must not stop the run
            elapsed = time.perf_counter() - started
            writer.writerow(
                [instance, variant, "", "", t, f"error: {e}", "",
                 f"{elapsed:.6f}"]
            )
    text = buf.getvalue()
    if args.out:
        _write(args.out, text)
    else:
        print(text, end="")
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="tdsolve", description="Exact treedepth solver"
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_variant(sp, default="fast"):
        sp.add_argument(
            "--variant",
            choices=["simple", "fast", "chordal", "given"],
            default=default,
        )
        sp.add_argument("--td", help="tree decomposition file (.td)")
        sp.add_argument("--naive", action="store_true",
                        help="unpruned candidate enumeration (cross-checks)")

    d = sub.add_parser("decide", help="is the treedepth at most t?")
    d.add_argument("graph")
    d.add_argument("-t", type=int, required=True)
    add_variant(d)
    d.add_argument("--decide-only", action="store_true", dest="decide_only",
                   help="skip witness reconstruction to save memory")
    d.add_argument("--out", help="write the witness .tree file here on YES")
    d.add_argument("--dot", help="write a Graphviz rendering of the witness")
    d.set_defaults(fn=cmd_decide)

    s = sub.add_parser("solve", help="exact treedepth by increasing t")
    s.add_argument("graph")
    add_variant(s)
    s.add_argument("--out", help="write the witness .tree file here")
    s.add_argument("--dot", help="write a Graphviz rendering of the witness")
    s.set_defaults(fn=cmd_solve)

    v = sub.add_parser("verify", help="check a .tree file against a graph")
    v.add_argument("graph")
    v.add_argument("tree")
    v.set_defaults(fn=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force exact treedepth (n <= 20)")
    o.add_argument("graph")
    o.add_argument("--out", help="write the witness .tree file here")
    o.add_argument("--dot", help="write a Graphviz rendering of the witness")
    o.set_defaults(fn=cmd_oracle)

    gn = sub.add_parser("gen", help="generate an instance")
    gn.add_argument("family", choices=list(FAMILIES))
    gn.add_argument("size", type=int)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--k", type=int, default=2, help="k for k-tree")
    gn.add_argument("--m", type=int, default=None, help="edges for random-gnm")
    gn.add_argument("--out", help="write the .gr file here (default stdout)")
    gn.set_defaults(fn=cmd_gen)

    b = sub.add_parser("bench", help="run a JSON manifest, emit CSV")
    b.add_argument("manifest")
    b.add_argument("--out", help="write the CSV here (default stdout)")
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, ParseError, ResourceLimit, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
