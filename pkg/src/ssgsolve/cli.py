"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 resource limit exceeded.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction

from .dgg import format_classes
from .game import GameFormatError, parse_game, serialize_game, validate
from .generators import gen_chain, gen_extremal, gen_random
from .iterate import (DEFAULT_R_CAP, BudgetMode, default_precision, format_solution,
                      format_values, solve, timed_trajectory)
from .numerics import as_fraction, format_rational
from .oracle import DEFAULT_STRATEGY_CAP, ResourceLimitError, enumerate_values, fib_r_step


class InputError(Exception):
    pass


def int_range(text: str) -> list[int]:
    """Parse ``5``, ``4..8`` or ``1000,10000`` into a list of integers."""
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("..")
        if sep:
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _read_game(path: str, check: bool = True):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as e:
        raise InputError(str(e)) from e
    try:
        game = parse_game(text, check=check)
    except GameFormatError as e:
        raise InputError(f"{path}: {e}") from e
    if check:
        problems = validate(game)
        if problems:
            raise InputError(f"{path}: " + "; ".join(map(str, problems)))
    return game


def cmd_solve(args, out) -> int:
    game = _read_game(args.file)
    sol = solve(game, BudgetMode(args.bound), precision=args.precision_bits,
                r_cap=args.r_cap)
    if args.trace_dgg:
        print(format_classes(sol.final_dgg, sol.approximation.rounded), file=sys.stderr)
    out.write(format_solution(sol, strategies=args.strategies))
    return 0


def cmd_oracle(args, out) -> int:
    game = _read_game(args.file)
    out.write(format_values(enumerate_values(game, args.oracle_cap)))
    return 0


def cmd_gen(args, out) -> int:
    if args.family == "extremal":
        game = gen_extremal(args.n, args.r)
    elif args.family == "chain":
        game = gen_chain(args.n, args.r)
    else:
        mx = args.max if args.max is not None else (args.n - args.r) // 2
        mn = args.min if args.min is not None else args.n - args.r - mx
        game = gen_random(args.n, args.r, mx, mn, args.seed)
    text = serialize_game(game)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        out.write(text)
    return 0


def cmd_check(args, out) -> int:
    game = _read_game(args.file, check=False)
    problems = validate(game)
    for p in problems:
        out.write(f"{p}\n")
    return 1 if problems else 0


def cmd_timed(args, out) -> int:
    game = _read_game(args.file)
    ts = int_range(args.t)
    precision = None if args.exact else (args.precision_bits or default_precision(game.r))
    wanted = set(ts)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "position", "value"])
    for t, v in enumerate(timed_trajectory(game, max(ts), precision)):
        if t in wanted:
            for k, x in enumerate(v):
                w.writerow([t, k, format_rational(as_fraction(x))])
    return 0


def _bench_games(args):
    for r in int_range(args.r):
        ns = int_range(args.n) if args.n else [r]
        for n in ns:
            if args.family == "extremal":
                yield n, r, "", gen_extremal(n, r)
            elif args.family == "chain":
                yield n, r, "", gen_chain(n, r)
            else:
                mx = (n - r) // 2
                yield n, r, args.seed, gen_random(n, r, mx, n - r - mx, args.seed)


def cmd_bench(args, out) -> int:
    w = csv.writer(out, lineterminator="\n")
    if args.timing:
        w.writerow(["family", "n", "r", "seed", "iterations", "dgg_solves", "ms"])
        for n, r, seed, game in _bench_games(args):
            start = time.perf_counter()
            sol = solve(game, BudgetMode(args.bound), r_cap=args.r_cap)
            ms = round((time.perf_counter() - start) * 1000)
            w.writerow([args.family, n, r, seed, sol.iterations_run, sol.full_dgg_solves, ms])
        return 0

    w.writerow(["family", "n", "r", "seed", "t", "position", "value", "gap",
                "closed_form_gap", "direct_bound", "extremal_bound"])
    for n, r, seed, game in _bench_games(args):
        if args.family == "extremal":
            target = [Fraction(1)] * (game.n + 1)
        else:
            target = solve(game, BudgetMode(args.bound), r_cap=args.r_cap).values
        for t, v in enumerate(timed_trajectory(game, args.t_max)):
            vals = v.fractions()
            if args.family == "extremal":
                k = r
                closed = format_rational(Fraction(fib_r_step(t + 2, r), 2 ** t))
            else:
                k = max(range(game.n + 1), key=lambda i: target[i] - vals[i])
                closed = ""
            gap = target[k] - vals[k]
            direct = (1 - Fraction(1, 2 ** r)) ** (t // r) if r else Fraction(0)
            extremal = 2 * (1 - Fraction(1, 2 ** (r + 1))) ** t
            w.writerow([args.family, n, r, seed, t, k, format_rational(vals[k]),
                        format_rational(gap), closed, format_rational(direct),
                        format_rational(extremal)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ssgsolve",
                                 description="Exact solver for simple stochastic games.")
    sub = ap.add_subparsers(dest="command", required=True)

    def solver_opts(p):
        p.add_argument("--bound", choices=[m.value for m in BudgetMode], default="extremal")
        p.add_argument("--r-cap", type=_positive, default=DEFAULT_R_CAP)

    p = sub.add_parser("solve", help="solve a game exactly")
    p.add_argument("file")
    solver_opts(p)
    p.add_argument("--precision-bits", type=_positive)
    p.add_argument("--strategies", action="store_true")
    p.add_argument("--trace-dgg", action="store_true",
                   help="dump the final DGG value classes to stderr")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="values by strategy enumeration")
    p.add_argument("file")
    p.add_argument("--oracle-cap", type=_positive, default=DEFAULT_STRATEGY_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a generated game")
    p.add_argument("family", choices=["extremal", "chain", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max", type=int)
    p.add_argument("--min", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="print the validation report")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("timed", help="time-bounded values as CSV")
    p.add_argument("file")
    p.add_argument("--t", required=True, help="T, A..B or a comma list")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--precision-bits", type=_positive)
    p.set_defaults(func=cmd_timed)

    p = sub.add_parser("bench", help="gap curves or timings as CSV")
    p.add_argument("--family", choices=["extremal", "chain", "random"], default="extremal")
    p.add_argument("--r", default="4..8")
    p.add_argument("--n", help="sizes; defaults to n = r")
    p.add_argument("--t-max", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="emit wall-clock timings instead")
    solver_opts(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
