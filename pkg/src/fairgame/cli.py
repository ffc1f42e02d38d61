"""Command line surface.

Exit codes: 0 success, 1 input or usage error, 2 certification failure or
refusal, 3 solver timeout.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bench import CSV_HEADER, SOLVER_TAGS, run_bench, write_csv
from .certify import DEFAULT_MAX_EDGES, certify_partition
from .fixpoint import extract_ranks, solve_odd_fp
from .game import Deadline, OddFairGame, SolverTimeout, SubgameView
from .pgfile import ParseError, mutate_liveness, mutate_priorities, parse_game, write_game
from .report import ReportError, write_report
from .templates import (
    build_rank_template,
    extract_even_strategy,
    format_strategy,
    format_template,
)
from .zielonka import solve_zielonka_fair, solve_zielonka_normal

ALGOS = SOLVER_TAGS


def _default_seed() -> int:
    env = os.environ.get("FAIRGAME_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return 1


def _load_game(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        return None
    try:
        return parse_game(text)
    except ParseError as exc:
        print(f"parse error in {path}: {exc}", file=sys.stderr)
        return None


def _strip_live(game: OddFairGame) -> OddFairGame:
    return OddFairGame(
        game.owner,
        game.original_priority,
        game.succ,
        (),
        names=game.names,
        original_ids=game.original_ids,
    )


def _region_line(game, name, region) -> str:
    labels = sorted(game.label(v) for v in region)
    return f"{name}:" + ("" if not labels else " " + " ".join(labels))


def _solve_instance(game, algo, deadline, want_artifacts):
    """Returns (w_even, w_odd, template, strategy, odd_trace)."""
    view = SubgameView.full(game)
    use_live = algo in ("of-zl", "of-fp")
    template = strategy = trace = None
    if algo in ("of-zl", "n-zl"):
        solver = solve_zielonka_fair if algo == "of-zl" else solve_zielonka_normal
        art = solver(view, extract=want_artifacts, deadline=deadline)
        w_even, w_odd = art.win_even, art.win_odd
        template, strategy = art.odd_template, art.even_strategy
    else:
        w_odd, trace = solve_odd_fp(view, use_live=use_live, deadline=deadline)
        w_even = w_odd.complement()
        if want_artifacts:
            template = build_rank_template(view, w_odd, extract_ranks(trace))
            strategy = extract_even_strategy(view, use_live=use_live, deadline=deadline)
    return w_even, w_odd, template, strategy, trace


def cmd_solve(args) -> int:
    game = _load_game(args.file)
    if game is None:
        return 1
    if args.algo not in ALGOS:
        print(f"unknown algorithm {args.algo}", file=sys.stderr)
        return 1
    deadline = Deadline(args.timeout) if args.timeout else None
    use_live = args.algo in ("of-zl", "of-fp")
    want_artifacts = args.template or args.certify
    try:
        w_even, w_odd, template, strategy, trace = _solve_instance(
            game, args.algo, deadline, want_artifacts
        )
        if args.ranks and (trace is None or trace.components is None):
            view = SubgameView.full(game)
            _, trace = solve_odd_fp(view, use_live=use_live, deadline=deadline)
    except SolverTimeout:
        print("timeout", file=sys.stderr)
        return 3
    print(_region_line(game, "W_Even", w_even))
    print(_region_line(game, "W_Odd", w_odd))
    if args.ranks:
        ranks = extract_ranks(trace)
        for v in sorted(trace.region, key=game.label):
            tup = ", ".join(map(str, ranks[v].interleaved()))
            print(f"rank {game.label(v)} ({tup})")
    if args.template:
        sys.stdout.write(format_template(game, template))
        sys.stdout.write(format_strategy(game, strategy))
    if args.certify:
        target = game if use_live else _strip_live(game)
        res = certify_partition(
            target, w_even, w_odd, strategy, template, max_edges=args.max_edges
        )
        print(res.detail)
        if not res.certified:
            return 2
    return 0


def cmd_mutate(args) -> int:
    game = _load_game(args.file)
    if game is None:
        return 1
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        if args.priorities is not None:
            game = mutate_priorities(game, args.priorities, seed)
        game = mutate_liveness(game, args.liveness, seed)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    Path(args.output).write_text(write_game(game))
    return 0


def cmd_bench(args) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        print(f"not a directory: {args.directory}", file=sys.stderr)
        return 1
    paths = sorted(
        str(p) for p in root.iterdir() if p.is_file() and not p.name.startswith(".")
    )
    if not paths:
        print(f"no instance files in {args.directory}", file=sys.stderr)
        return 1
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    bad = [a for a in algos if a not in ALGOS]
    if bad or not algos:
        print(f"unknown algorithms: {', '.join(bad) or '(none given)'}", file=sys.stderr)
        return 1
    records = run_bench(paths, algos, args.timeout, jobs=args.jobs)
    write_csv(records, args.out)
    print(f"wrote {len(records)} rows to {args.out}")
    return 0


def cmd_report(args) -> int:
    try:
        summary = write_report(args.csv, args.x, args.y, args.out, log=args.log)
    except (OSError, ReportError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    sys.stdout.write(summary)
    print(f"wrote {args.out}")
    return 0


def cmd_check(args) -> int:
    game = _load_game(args.file)
    if game is None:
        return 1
    deadline = Deadline(args.timeout) if args.timeout else None
    use_live = args.algo in ("of-zl", "of-fp")
    try:
        w_even, w_odd, template, strategy, _ = _solve_instance(
            game, args.algo, deadline, True
        )
    except SolverTimeout:
        print("timeout", file=sys.stderr)
        return 3
    target = game if use_live else _strip_live(game)
    res = certify_partition(
        target, w_even, w_odd, strategy, template, max_edges=args.max_edges
    )
    print(res.detail)
    return 0 if res.certified else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairgame",
        description="Solve, mutate, benchmark and certify parity games with live edges.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance and print the winning regions")
    p.add_argument("file")
    p.add_argument("--algo", default="of-zl", choices=ALGOS)
    p.add_argument("--template", action="store_true", help="print the Odd template and Even strategy")
    p.add_argument("--certify", action="store_true", help="certify the result exhaustively")
    p.add_argument("--ranks", action="store_true", help="print per-vertex ranks")
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("mutate", help="derive an instance with random live edges or priorities")
    p.add_argument("file")
    p.add_argument("--liveness", type=float, required=True, help="percentage of Odd vertices given live edges")
    p.add_argument("--priorities", type=int, default=None, help="redraw priorities uniformly from 1..P")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("bench", help="run solvers over a directory of instances")
    p.add_argument("directory")
    p.add_argument("--algos", default=",".join(ALGOS))
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="scatter plot of one solver against another")
    p.add_argument("csv")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--log", action="store_true")
    p.add_argument("-o", "--out", default="scatter.svg")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("check", help="solve and certify one instance")
    p.add_argument("file")
    p.add_argument("--algo", default="of-fp", choices=ALGOS)
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
