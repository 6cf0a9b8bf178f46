"""Command-line interface.

Subcommands: construct, flips, generate, count, hg, bounds, verify.
Payloads are JSON on stdout (CSV for matrices and profiles on request);
all randomness sits behind an explicit --seed and no wall-clock data is
emitted, so identical argv always produces byte-identical output.  Exit
codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Any

from . import bounds, core, counting, hypergraph, verify
from .construction import BaseParams, build_base_config
from .errors import QueensLabError
from .flips import enumerate_flips, greedy_disjoint_flips, apply_flips

PROG = "queens-lab"


@dataclass(frozen=True)
class CommandResult:
    command: str
    params: dict[str, Any]
    payload: Any
    status: str
    elapsed: float


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _config_payload(config: core.QueensConfig) -> dict:
    return {"n": config.n, "p": list(config.p)}


def _flip_payload(flip) -> dict:
    return {
        "removed": [[s.x, s.y] for s in flip.removed],
        "added": [[s.x, s.y] for s in flip.added],
        "canonical_id": [flip.canonical_id.x, flip.canonical_id.y],
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Toroidal n-queens constructions, flip algebra, exact "
        "counters, hypergraph matchings, and bound cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit the base configuration for n = 4^k + 1")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("flips", help="enumerate the flips of the base configuration")
    p.add_argument("--k", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--list", action="store_true", help="emit every flip")
    group.add_argument("--count", action="store_true", help="emit the count only (default)")
    p.add_argument("--out", default=None)

    p = sub.add_parser("generate", help="apply t disjoint flips to the base configuration")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("count", help="exact solution counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=counting.MODES, required=True)
    p.add_argument("--oracle", action="store_true", help="use the permutation-filter oracle")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("hg", help="hypergraph constructors, stats, matchings, bound")
    p.add_argument("--family", choices=("torus", "transversal", "sudoku", "steiner", "flip"))
    p.add_argument("--params", default=None, help="JSON parameters for the family")
    p.add_argument("--in", dest="infile", default=None, help="read a hypergraph JSON instead")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--count-pm", action="store_true")
    p.add_argument("--bound", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bounds", help="bound constants, exposure matrix, row profiles")
    p.add_argument("--alpha", action="store_true")
    p.add_argument("--torus-log", type=int, default=None, metavar="N")
    p.add_argument("--classical-log", type=int, default=None, metavar="N")
    p.add_argument("--dmatrix", type=int, default=None, metavar="N")
    p.add_argument("--profile", action="store_true")
    p.add_argument("--check-lemmas", action="store_true")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--level", choices=verify.LEVELS, default="quick")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)

    return parser


def _run_construct(args) -> Any:
    return _config_payload(build_base_config(args.k))


def _run_flips(args) -> Any:
    params = BaseParams.from_k(args.k)
    all_flips = enumerate_flips(params)
    payload = {"k": args.k, "n": params.n, "count": len(all_flips)}
    if args.list:
        payload["flips"] = [_flip_payload(f) for f in all_flips]
    return payload


def _run_generate(args) -> Any:
    params = BaseParams.from_k(args.k)
    flip_set = greedy_disjoint_flips(params, args.t, seed=args.seed)
    config = apply_flips(build_base_config(args.k), flip_set)
    return {
        "config": _config_payload(config),
        "flips": [[s.x, s.y] for s in flip_set.canonical_ids()],
    }


def _run_count(args, parser) -> Any:
    if args.n < 1:
        parser.error(f"--n must be >= 1, got {args.n}")
    if args.oracle:
        result = counting.oracle_count(args.n, args.mode)
    elif args.mode == "classical":
        result = counting.count_classical(args.n, threads=args.threads)
    else:
        result = counting.count_toroidal(args.n, threads=args.threads)
    return {
        "n": result.n,
        "mode": result.mode,
        "oracle": bool(args.oracle),
        "count": result.count,
        "nodes_visited": result.nodes_visited,
    }


def _hg_from_args(args, parser) -> tuple[hypergraph.Hypergraph, str, dict]:
    if args.infile is not None:
        return hypergraph.from_json(_read_input(args.infile)), "custom", {}
    if args.family is None:
        parser.error("hg requires --family or --in")
    try:
        raw = json.loads(args.params) if args.params else {}
    except json.JSONDecodeError as exc:
        parser.error(f"--params is not valid JSON: {exc}")
    try:
        if args.family == "torus":
            return hypergraph.build_torus_queens_hg(raw["n"]), "torus", raw
        if args.family == "transversal":
            latin = raw["latin"] if "latin" in raw else hypergraph.cyclic_latin_square(raw["order"])
            return hypergraph.build_transversal_hg(latin), "transversal", raw
        if args.family == "sudoku":
            return hypergraph.build_sudoku_hg(raw["b"]), "sudoku", raw
        if args.family == "steiner":
            return hypergraph.build_steiner_aux_hg(raw["n"], raw["q"], raw["r"]), "steiner", raw
        return hypergraph.build_flip_hg(raw["k"]), "flip", raw
    except (KeyError, TypeError) as exc:
        parser.error(f"--params missing or malformed for family {args.family}: {exc}")


def _run_hg(args, parser) -> Any:
    hg, family, raw = _hg_from_args(args, parser)
    if not (args.stats or args.count_pm or args.bound):
        return json.loads(hypergraph.to_json(hg))
    payload: dict[str, Any] = {"family": family, "params": raw}
    hg_stats = hypergraph.stats(hg)
    if args.stats:
        payload["stats"] = {
            "num_vertices": hg_stats.num_vertices,
            "num_edges": hg_stats.num_edges,
            "d": hg_stats.d,
            "is_regular": hg_stats.is_regular,
            "k": hg_stats.k,
            "max_codegree": hg_stats.max_codegree,
        }
    if args.count_pm:
        payload["perfect_matchings"] = hypergraph.count_perfect_matchings(
            hg, threads=args.threads
        )
    if args.bound:
        report = hypergraph.entropy_bound_log(hg_stats)
        payload["bound"] = {
            "log_bound": report.log_bound,
            "formula": report.formula_name,
            "num_vertices": report.num_vertices,
            "k": report.k,
            "d": report.d,
        }
        if args.count_pm and payload["perfect_matchings"] > 0 and report.log_bound != 0:
            payload["log_count_over_log_bound"] = (
                math.log(payload["perfect_matchings"]) / report.log_bound
            )
    return payload


def _check_lemmas(n: int) -> dict:
    solutions = counting.enumerate_solutions(n, "classical")
    floor = bounds.concentric_lower_bound(n)
    identity_ok = True
    inequality_ok = True
    sums_ok = True
    for config in solutions:
        profiles = bounds.attack_profiles(config)
        if any(p.by_three + p.by_two + p.by_one != n - 1 for p in profiles):
            sums_ok = False
        lhs = bounds.concentric_sum(config)
        rhs = sum(bounds.diagonal_exposure(n, y, x) for x, y in config.squares())
        identity_ok = identity_ok and lhs == rhs
        inequality_ok = inequality_ok and lhs >= floor
    return {
        "n": n,
        "solutions": len(solutions),
        "profile_sums_ok": sums_ok,
        "identity_ok": identity_ok,
        "inequality_ok": inequality_ok,
        "passed": sums_ok and identity_ok and inequality_ok,
    }


def _run_bounds(args, parser) -> Any:
    actions = [
        args.alpha,
        args.torus_log is not None,
        args.classical_log is not None,
        args.dmatrix is not None,
        args.profile,
        args.check_lemmas,
    ]
    if sum(actions) != 1:
        parser.error(
            "bounds requires exactly one of --alpha, --torus-log, "
            "--classical-log, --dmatrix, --profile, --check-lemmas"
        )
    if args.alpha:
        closed = bounds.classical_alpha("closed_form")
        quad = bounds.classical_alpha("quadrature")
        return {"closed_form": closed, "quadrature": quad, "difference": abs(closed - quad)}
    if args.torus_log is not None:
        return {"n": args.torus_log, "log_bound": bounds.torus_bound_log(args.torus_log)}
    if args.classical_log is not None:
        return {
            "n": args.classical_log,
            "log_bound": bounds.classical_bound_log(args.classical_log),
            "alpha": bounds.classical_alpha("closed_form"),
        }
    if args.dmatrix is not None:
        return {"n": args.dmatrix, "matrix": bounds.diagonal_exposure_matrix(args.dmatrix)}
    if args.profile:
        config = core.parse(_read_input(args.infile))
        profiles = bounds.attack_profiles(config)
        return {
            "n": config.n,
            "profiles": [
                {"row": p.row, "by_three": p.by_three, "by_two": p.by_two, "by_one": p.by_one}
                for p in profiles
            ],
            "concentric_sum": bounds.concentric_sum(config),
        }
    if args.n is None:
        parser.error("--check-lemmas requires --n")
    return _check_lemmas(args.n)


def _render(command: str, payload: Any, fmt: str) -> str:
    if fmt == "csv":
        if command == "bounds" and isinstance(payload, dict) and "matrix" in payload:
            return "\n".join(",".join(str(v) for v in row) for row in payload["matrix"]) + "\n"
        if command == "bounds" and isinstance(payload, dict) and "profiles" in payload:
            lines = ["row,by_three,by_two,by_one"]
            lines.extend(
                f"{p['row']},{p['by_three']},{p['by_two']},{p['by_one']}"
                for p in payload["profiles"]
            )
            return "\n".join(lines) + "\n"
        raise QueensLabError("csv format supported only for --dmatrix and --profile")
    return json.dumps(payload, indent=2) + "\n"


def dispatch(argv: list[str]) -> CommandResult:
    """Parse argv and run the command; domain errors become an error result."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in sorted(vars(args).items()) if k != "command"}
    start = time.perf_counter()
    try:
        if args.command == "construct":
            payload = _run_construct(args)
        elif args.command == "flips":
            payload = _run_flips(args)
        elif args.command == "generate":
            payload = _run_generate(args)
        elif args.command == "count":
            payload = _run_count(args, parser)
        elif args.command == "hg":
            payload = _run_hg(args, parser)
        elif args.command == "bounds":
            payload = _run_bounds(args, parser)
        else:
            payload = verify.run_verification_suite(args.level, threads=args.threads)
        status = "ok"
    except QueensLabError as exc:
        payload = {"code": exc.code, "message": str(exc)}
        status = "error"
    return CommandResult(
        command=args.command,
        params=params,
        payload=payload,
        status=status,
        elapsed=time.perf_counter() - start,
    )


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    result = dispatch(argv)
    if result.status == "error":
        sys.stderr.write(json.dumps({"status": "error", **result.payload}) + "\n")
        return 1
    fmt = result.params.get("format", "json")
    try:
        text = _render(result.command, result.payload, fmt)
    except QueensLabError as exc:
        sys.stderr.write(json.dumps({"status": "error", "code": exc.code, "message": str(exc)}) + "\n")
        return 1
    out = result.params.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if result.command == "verify" and not result.payload["passed"]:
        return 1
    if result.command == "bounds" and isinstance(result.payload, dict) and result.payload.get("passed") is False:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
