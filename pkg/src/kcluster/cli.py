"""Command line entry point: ``kcluster solve|inspect|fuzz|bench``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import mutants
from .bench import run_bench, to_csv
from .clique_structure import maximal_cliques, stairs
from .errors import KClusterError
from .harness import FuzzConfig, run_fuzz
from .interval import solve_interval
from .interval_model import IntervalRealization, is_proper, parse_realization, relabel, to_nir, to_snir
from .oracle import PROFILE_MAX_N
from .proper import solve_proper

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


def _read(path: Path) -> IntervalRealization:
    try:
        text = path.read_text()
    except OSError as exc:
        raise KClusterError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_realization(text)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def solve_document(r: IntervalRealization, k: int, connected: bool, cls: str = "auto") -> dict:
    """Solve ``r`` and return the result document with original node labels."""
    if cls == "auto":
        cls = "proper" if is_proper(r) else "interval"
    started = time.perf_counter_ns()
    if cls == "proper":
        form, order = to_snir(r)
        sol = solve_proper(form, k, connected)
    else:
        form, order = to_nir(r)
        sol = solve_interval(form, k, connected)
    elapsed = time.perf_counter_ns() - started
    return {
        "value": sol.value,
        "nodes": relabel(sol.nodes, order),
        "k": k,
        "class": cls,
        "connected": connected,
        "feasible": sol.feasible,
        "n": r.n,
        "elapsed_ns": elapsed,
    }


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        doc = solve_document(_read(args.instance), args.k, args.connected, args.cls)
    except (KClusterError, ValueError) as exc:
        return _fail(str(exc))
    if args.json:
        print(json.dumps(doc))
    elif doc["feasible"]:
        print(f"value: {doc['value']}")
        print(f"nodes: {' '.join(map(str, doc['nodes']))}")
        print(f"class: {doc['class']}")
        print(f"elapsed_ns: {doc['elapsed_ns']}")
    else:
        print(f"infeasible: no connected {doc['k']}-node subgraph")
        print(f"class: {doc['class']}")
    return EXIT_OK if doc["feasible"] else EXIT_INFEASIBLE


def render_nir(r: IntervalRealization) -> list[str]:
    form, order = to_nir(r)
    lines = [
        "reach: " + " ".join(map(str, form.reach)),
        "order: " + " ".join(map(str, order)),
    ]
    for i, row in enumerate(form.dense(), start=1):
        lines.append("".join(str(v) if j <= i else "." for j, v in enumerate(row, start=1)))
    return lines


def render_cliques(r: IntervalRealization) -> list[str]:
    proper = is_proper(r)
    form, order = to_snir(r) if proper else to_nir(r)
    c = maximal_cliques(form)
    picks = stairs(form) if proper else None
    lines = ["order: " + " ".join(map(str, order))]
    for i in range(1, c.m + 1):
        line = f"Q{i}={{{','.join(map(str, c.members(i)))}}} @row {c.anchor(i)}"
        if picks is not None:
            line += f" pick=({picks.a(i)},{picks.b(i)})"
        lines.append(line)
    return lines


def cmd_inspect(args: argparse.Namespace) -> int:
    try:
        r = _read(args.instance)
        lines = render_nir(r) if args.what == "nir" else render_cliques(r)
    except KClusterError as exc:
        return _fail(str(exc))
    print("\n".join(lines))
    return EXIT_OK


def cmd_fuzz(args: argparse.Namespace) -> int:
    if args.mutant is not None and args.mutant not in mutants.MUTANTS:
        return _fail(f"unknown mutant {args.mutant!r}; choose from {', '.join(mutants.MUTANTS)}")
    cfg = FuzzConfig(
        exhaustive_n=args.exhaustive_n,
        trials=args.trials,
        seed=args.seed,
        n_min=args.n_min,
        n_max=args.n_max,
        budget=args.budget,
        workers=args.workers,
        mutant=args.mutant,
    )
    try:
        summary = run_fuzz(cfg, emit=lambda rec: print(json.dumps(rec), flush=True))
    except KClusterError as exc:
        return _fail(str(exc))
    print(json.dumps(summary.to_json()) if args.json else summary.line())
    return EXIT_OK if summary.ok else EXIT_ERROR


def cmd_bench(args: argparse.Namespace) -> int:
    classes = ("proper", "interval") if args.cls == "auto" else (args.cls,)
    rows = run_bench(args.n, args.k, classes, args.connected, args.reps, args.seed)
    sys.stdout.write(to_csv(rows))
    return EXIT_OK


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kcluster", description="Densest k-subgraph on interval graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("instance", type=Path)
    s.add_argument("--k", type=_non_negative, required=True)
    s.add_argument("--connected", action="store_true")
    s.add_argument("--class", dest="cls", choices=("auto", "interval", "proper"), default="auto")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_solve)

    i = sub.add_parser("inspect", help="dump the normal form or the clique sequence")
    i.add_argument("what", choices=("nir", "cliques"))
    i.add_argument("instance", type=Path)
    i.set_defaults(run=cmd_inspect)

    f = sub.add_parser("fuzz", help="differential test against the brute-force oracle")
    f.add_argument("--exhaustive-n", type=_non_negative, default=0)
    f.add_argument("--trials", type=_non_negative, default=0)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--n-min", type=int, default=8)
    f.add_argument("--n-max", type=int, default=14)
    f.add_argument("--budget", type=int, default=PROFILE_MAX_N, help="largest n the oracle accepts")
    f.add_argument("--workers", type=int, default=1)
    f.add_argument("--mutant", default=None, help="inject a named off-by-one fault")
    f.add_argument("--json", action="store_true")
    f.set_defaults(run=cmd_fuzz)

    b = sub.add_parser("bench", help="time the solvers over an (n, k) grid, CSV to stdout")
    b.add_argument("--n", type=int, nargs="+", default=[200, 400, 800])
    b.add_argument("--k", type=int, nargs="+", default=[6])
    b.add_argument("--class", dest="cls", choices=("auto", "interval", "proper"), default="auto")
    b.add_argument("--connected", action="store_true")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(run=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep 2 reserved for infeasible solves
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    return args.run(args)


if __name__ == "__main__":
    sys.exit(main())
