"""Command-line interface.

Subcommands: gen (write instances), solve (exact optima), verify
(inequality suite), iso (isomorphism), canon (canonical form).  All
output is deterministic: integers and exact fractions only, no
timestamps, identical invocations give byte-identical output.

Exit codes: 0 success (or: all checks pass / isomorphic), 1 verified
failure (a failing check, or not isomorphic), 2 usage or malformed
input, 3 undecided (a solver or search budget ran out before a proof).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .canon import SearchBudgetExceeded, canonical_form, is_isomorphic
from .canon import DEFAULT_MAX_NODES as CANON_MAX_NODES
from .constructions import (
    build_c,
    build_cnn,
    enumerate_c44,
    matching,
    pad_uniform,
    projective_plane,
    random_linear_system,
    star,
)
from .core import LinearSystemError
from .files import dump_instance, dump_labeling, read_instance, write_instance
from .solvers import (
    DEFAULT_MAX_NODES,
    SearchBudget,
    transversal_number,
    two_packing_number,
)
from . import verify as verify_mod


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="linesys",
        description="linear systems: constructions, exact solvers, checks",
    )
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gsub = gen.add_subparsers(dest="construction", required=True)

    def add_out(p: argparse.ArgumentParser, labels: bool = False) -> None:
        p.add_argument("--out", help="instance file (stdout when omitted)")
        if labels:
            p.add_argument("--labels", help="also write a labeling sidecar here")

    g = gsub.add_parser("cnn", help="two-apex cyclic system, odd n >= 3")
    g.add_argument("--n", type=int, required=True)
    add_out(g, labels=True)
    g = gsub.add_parser("plane", help="projective plane of prime order")
    g.add_argument("--q", type=int, required=True)
    add_out(g, labels=True)
    g = gsub.add_parser("C", help="order-3 plane minus a triangle")
    add_out(g, labels=True)
    g = gsub.add_parser("c44", help="the family between C and the order-3 plane")
    g.add_argument("--out-dir", required=True)
    g = gsub.add_parser("matching", help="m disjoint r-lines")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    add_out(g)
    g = gsub.add_parser("star", help="k r-lines through one point")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    add_out(g)
    g = gsub.add_parser("random", help="seeded random system")
    g.add_argument("--points", type=int, required=True)
    g.add_argument("--lines", type=int, required=True)
    g.add_argument("--min-size", type=int, required=True)
    g.add_argument("--max-size", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    add_out(g)
    g = gsub.add_parser("pad", help="pad a uniform instance to line size r")
    g.add_argument("--base", required=True, help="instance file to pad")
    g.add_argument("--r", type=int, required=True)
    add_out(g)

    solve = sub.add_parser("solve", help="exact transversal / 2-packing numbers")
    solve.add_argument("instance")
    solve.add_argument("--what", choices=("tau", "nu2", "both"), default="both")
    solve.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    solve.add_argument(
        "--deterministic",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="return the lexicographically least optimal witness",
    )
    solve.add_argument("--format", choices=("text", "json"), default="text")

    ver = sub.add_parser("verify", help="run the inequality check suite")
    ver.add_argument("instances", nargs="*", help="instance files")
    ver.add_argument("--family", choices=("cnn", "planes", "c44", "random"))
    ver.add_argument("--ns", default="3,5,7", help="cnn sizes, comma-separated")
    ver.add_argument("--orders", default="2,3", help="plane orders, comma-separated")
    ver.add_argument("--count", type=int, default=20, help="random instance count")
    ver.add_argument("--seed", type=int, default=1, help="random base seed")
    ver.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    ver.add_argument("--format", choices=("text", "json"), default="text")

    iso = sub.add_parser("iso", help="decide isomorphism of two instances")
    iso.add_argument("first")
    iso.add_argument("second")
    iso.add_argument("--max-nodes", type=int, default=CANON_MAX_NODES)

    canon = sub.add_parser("canon", help="print the canonical form")
    canon.add_argument("instance")
    canon.add_argument("--max-nodes", type=int, default=CANON_MAX_NODES)
    return top


def _cmd_gen(args: argparse.Namespace) -> int:
    labeling = None
    if args.construction == "cnn":
        system, labeling = build_cnn(args.n)
    elif args.construction == "plane":
        system, labeling = projective_plane(args.q)
    elif args.construction == "C":
        system, labeling = build_c()
    elif args.construction == "c44":
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        members = enumerate_c44()
        provenance = []
        for i, member in enumerate(members):
            name = f"c44_{i:02d}.json"
            write_instance(out_dir / name, member.system)
            provenance.append(
                {
                    "file": name,
                    "points": member.system.num_points,
                    "lines": member.system.num_lines,
                    "restored_points": list(member.restored_point_labels),
                    "restored_lines": list(member.restored_line_labels),
                }
            )
        (out_dir / "provenance.json").write_text(
            json.dumps({"members": provenance}, indent=1) + "\n"
        )
        print(f"wrote {len(members)} members to {out_dir}")
        return 0
    elif args.construction == "matching":
        system = matching(args.m, args.r)
    elif args.construction == "star":
        system = star(args.k, args.r)
    elif args.construction == "random":
        system = random_linear_system(
            args.points, args.lines, (args.min_size, args.max_size), args.seed
        )
    elif args.construction == "pad":
        system, _ = pad_uniform(read_instance(args.base), args.r)
    else:  # pragma: no cover - argparse guards
        raise AssertionError(args.construction)
    if args.out:
        write_instance(args.out, system)
    else:
        sys.stdout.write(dump_instance(system))
    if getattr(args, "labels", None):
        if labeling is None:
            print("this construction has no labeling", file=sys.stderr)
            return 2
        Path(args.labels).write_text(
            dump_labeling(labeling.name, labeling.point_labels, labeling.line_labels)
        )
    return 0


def _witness_str(witness: tuple[int, ...]) -> str:
    return ",".join(map(str, witness)) if witness else "-"


def _cmd_solve(args: argparse.Namespace) -> int:
    system = read_instance(args.instance)
    budget = SearchBudget(args.max_nodes, args.deterministic)
    results = {}
    if args.what in ("tau", "both"):
        results["tau"] = transversal_number(system, budget)
    if args.what in ("nu2", "both"):
        results["nu2"] = two_packing_number(system, budget)
    if args.format == "json":
        doc = {
            key: {
                "optimum": r.optimum,
                "witness": list(r.witness),
                "nodes_explored": r.nodes_explored,
                "proven_optimal": r.proven_optimal,
            }
            for key, r in results.items()
        }
        print(json.dumps(doc, indent=1))
    else:
        for key, r in results.items():
            status = "proven" if r.proven_optimal else "unproven"
            print(
                f"{key} {r.optimum} {status} "
                f"witness={_witness_str(r.witness)} nodes={r.nodes_explored}"
            )
    return 0 if all(r.proven_optimal for r in results.values()) else 3


def _cmd_verify(args: argparse.Namespace) -> int:
    instances: list = []
    if args.instances:
        instances += verify_mod.file_family(args.instances)
    if args.family == "cnn":
        instances += verify_mod.cnn_family(
            [int(x) for x in args.ns.split(",") if x]
        )
    elif args.family == "planes":
        instances += verify_mod.plane_family(
            [int(x) for x in args.orders.split(",") if x]
        )
    elif args.family == "c44":
        instances += verify_mod.c44_family()
    elif args.family == "random":
        instances += verify_mod.random_family(args.count, args.seed)
    if not instances:
        print("nothing to verify: give instance files or --family", file=sys.stderr)
        return 2
    suite = verify_mod.run_suite(instances, SearchBudget(args.max_nodes))
    if args.format == "json":
        print(json.dumps(suite.to_jsonable(), indent=1))
    else:
        sys.stdout.write(suite.render_text())
    return suite.exit_code()


def _cmd_iso(args: argparse.Namespace) -> int:
    a = read_instance(args.first)
    b = read_instance(args.second)
    if is_isomorphic(a, b, args.max_nodes):
        print("isomorphic")
        return 0
    print("not-isomorphic")
    return 1


def _cmd_canon(args: argparse.Namespace) -> int:
    system = read_instance(args.instance)
    sys.stdout.write(canonical_form(system, args.max_nodes).decode())
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handlers = {
        "gen": _cmd_gen,
        "solve": _cmd_solve,
        "verify": _cmd_verify,
        "iso": _cmd_iso,
        "canon": _cmd_canon,
    }
    try:
        return handlers[args.command](args)
    except SearchBudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 3
    except (LinearSystemError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
