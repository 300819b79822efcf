"""Command-line entry point: ``symrigid <command> ...``.

The report is a JSON document on stdout; a short summary goes to stderr.
Exit codes: 0 success, 1 input error, 2 enumeration cap exceeded,
3 numeric disagreement under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import InputError, LimitExceeded
from .gaingraph import MAX_SUBSET_ARCS
from .io import fixture_path, read_edge_list, read_graph
from .numeric import DEFAULT_TOL, DEFAULT_TRIALS, expand_covering, generic_rank, laman_generic_rank
from .sparsity import cyclic_decide, decide, laman_decide

SCHEMA = "symrigid.report/1"
EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_DISAGREE = 0, 1, 2, 3


def _resolve(arg: str) -> Path:
    p = Path(arg)
    if p.exists():
        return p
    try:
        return Path(str(fixture_path(arg)))
    except InputError:
        raise InputError(f"no such file or bundled fixture: {arg}") from None


def _emit(report: dict, summary: str) -> None:
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _numeric_block(comb_rank: int, est, args) -> dict:
    return {
        "combinatorial_rank": comb_rank,
        "numeric_rank": est.rank,
        "agree": comb_rank == est.rank,
        "seed": args.seed,
        "tol": args.tol,
        "trials": args.trials,
        "gap": list(est.gap) if est.gap else None,
    }


def _pure_rotations(g) -> bool:
    return all(abs(complex(a.gain.trans)) == 0 for a in g.arcs)


def cmd_analyze(args) -> int:
    path = _resolve(args.file)
    g = read_graph(path)
    rep = decide(g, max_arcs=args.max_subset_arcs)
    out = {"schema": SCHEMA, "command": "analyze", "input": str(path), "verdict": rep.to_dict(),
           "witness": list(rep.witness) if rep.witness else []}
    agree = True
    if _pure_rotations(g):
        cyc = cyclic_decide(g, max_arcs=args.max_subset_arcs)
        out["rotation_count"] = {"rank": cyc.rank, "target_rank": cyc.target_rank, "agree": cyc.rank == rep.rank}
        agree &= cyc.rank == rep.rank
    if not args.no_numeric:
        est = generic_rank(g, trials=args.trials, seed=args.seed, tol=args.tol)
        out["numeric"] = _numeric_block(rep.rank, est, args)
        agree &= out["numeric"]["agree"]
    if args.figure:
        from .plotting import plot_gain_graph

        plot_gain_graph(g, args.figure, rep.witness, title=f"rank {rep.rank} / {rep.target_rank}")
        out["figures"] = [str(args.figure)]
    out["agree"] = agree
    verdict = "minimally rigid" if rep.minimally_rigid else ("rigid" if rep.spanning else "flexible")
    summary = f"{path.name}: {verdict}; rank {rep.rank} of target {rep.target_rank}, {rep.n_arcs} arcs"
    if rep.witness:
        summary += f"; violating arcs {list(rep.witness)}"
    if "numeric" in out:
        summary += f"; numeric rank {out['numeric']['numeric_rank']}"
    _emit(out, summary)
    if args.strict and not agree:
        print("disagreement between combinatorial and numeric ranks", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_laman(args) -> int:
    path = _resolve(args.file)
    n, edges, names = read_edge_list(path)
    rep = laman_decide(n, edges)
    out = {"schema": SCHEMA, "command": "laman", "input": str(path), "vertices": names,
           "verdict": rep.to_dict(), "witness": list(rep.witness) if rep.witness else []}
    agree = True
    if not args.no_numeric:
        est = laman_generic_rank(n, edges, trials=args.trials, seed=args.seed, tol=args.tol)
        out["numeric"] = _numeric_block(rep.rank, est, args)
        agree = out["numeric"]["agree"]
    out["agree"] = agree
    if rep.minimally_rigid:
        verdict = "minimally rigid"
    elif rep.spanning:
        verdict = "rigid, redundant"
    else:
        verdict = "flexible"
    _emit(out, f"{path.name}: {verdict}; rank {rep.rank} of {rep.target_rank}")
    if args.strict and not agree:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_matroid_lab(args) -> int:
    from . import lab

    if args.check == "union-check":
        recs = [r.to_dict() for r in lab.union_check(args.max_ground)]
    elif args.check == "hgraph-check":
        recs = [r.to_dict() for r in lab.hgraph_check(args.max_ground)]
    elif args.check == "hadamard-check":
        recs = [r.to_dict() for r in lab.hadamard_check(args.instances, args.size, args.seed, args.trials, args.tol)]
    else:
        probes = lab.probe_run(args.d, args.instances, args.size, args.seed, args.trials, args.tol)
        out = {"schema": SCHEMA, "command": "matroid-lab", "check": args.check, "records": probes}
        _emit(out, "\n".join(f"{p['instance']}: agree {p['agree']}, disagree {p['disagree']}" for p in probes))
        return EXIT_OK
    for r in recs:
        r["details"] = r["details"][:10]
    out = {"schema": SCHEMA, "command": "matroid-lab", "check": args.check, "records": recs,
           "passed": all(r["passed"] for r in recs)}
    _emit(out, "\n".join(f"{r['name']}: {r['checked'] - r['failed']}/{r['checked']} pass" for r in recs))
    return EXIT_OK


def cmd_expand(args) -> int:
    path = _resolve(args.file)
    g = read_graph(path)
    points, edges, labels = expand_covering(g, args.translation_bound)
    out = {
        "schema": SCHEMA,
        "command": "expand",
        "input": str(path),
        "translation_bound": args.translation_bound,
        "vertices": [{"element": e, "orbit": g.names[v], "xy": [float(x), float(y)]}
                     for (e, v), (x, y) in zip(labels, points)],
        "edges": [list(e) for e in edges],
    }
    if args.figure:
        from .plotting import plot_framework

        plot_framework(points, edges, args.figure, labels, title=f"{path.stem}, bound {args.translation_bound}")
        out["figures"] = [str(args.figure)]
    _emit(out, f"{path.name}: {len(points)} vertices, {len(edges)} edges")
    return EXIT_OK


def _numeric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="base seed for random configurations")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative singular value cutoff")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="random configurations; max rank is kept")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symrigid", description="Symmetry-forced rigidity of gain graphs in the plane.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide generic rigidity of a gain-graph file")
    p.add_argument("file", help="gain-graph JSON file or bundled fixture name")
    _numeric_flags(p)
    p.add_argument("--max-subset-arcs", type=int, default=MAX_SUBSET_ARCS)
    p.add_argument("--strict", action="store_true", help="exit 3 if the numeric rank disagrees")
    p.add_argument("--no-numeric", action="store_true", help="skip the numeric cross-check")
    p.add_argument("--figure", help="write a drawing of the gain graph with the witness highlighted")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("laman", help="generic rigidity of a plain graph from an edge list")
    p.add_argument("file", help="edge-list file ('u v' per line) or bundled fixture name")
    _numeric_flags(p)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--no-numeric", action="store_true")
    p.set_defaults(func=cmd_laman)

    p = sub.add_parser("matroid-lab", help="verify matroid identities on small instances")
    p.add_argument("check", choices=["union-check", "hadamard-check", "conjecture-probe", "hgraph-check"])
    p.add_argument("--max-ground", type=int, default=5)
    p.add_argument("--size", type=int, default=5, help="ground size of random instances")
    p.add_argument("--instances", type=int, default=10)
    p.add_argument("--d", type=int, default=3, help="number of spaces for the probe")
    _numeric_flags(p)
    p.set_defaults(func=cmd_matroid_lab)

    p = sub.add_parser("expand", help="export a finite piece of the covering framework")
    p.add_argument("file")
    p.add_argument("--translation-bound", type=int, default=1)
    p.add_argument("--figure", help="write a drawing of the expanded framework")
    p.set_defaults(func=cmd_expand)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
