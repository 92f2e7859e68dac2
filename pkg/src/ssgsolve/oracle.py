"""Brute-force ground truth.

Nothing here shares code with the solver beyond the game type: values come
from enumerating every pair of positional strategies and solving the induced
Markov chain exactly with rational Gaussian elimination.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .game import GOAL, PositionKind, PositionalStrategy, SimpleStochasticGame

DEFAULT_STRATEGY_CAP = 20

_ZERO = -1
_HALF = Fraction(1, 2)


class ResourceLimitError(RuntimeError):
    """A configured size cap was exceeded."""


class OracleLimitError(ResourceLimitError):
    pass


@dataclass(frozen=True)
class StrategyPairEvaluation:
    """Probability of reaching GOAL from each position under a strategy pair."""

    values: tuple[Fraction, ...]

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)


def solve_linear(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve ``a x = b`` exactly; ``a`` must be square and nonsingular."""
    m = len(a)
    rows = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(m):
        piv = next((i for i in range(col, m) if rows[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        rows[col], rows[piv] = rows[piv], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        for j in range(col, m + 1):
            prow[j] *= inv
        for i in range(m):
            if i != col and rows[i][col] != 0:
                f = rows[i][col]
                row = rows[i]
                for j in range(col, m + 1):
                    row[j] -= f * prow[j]
    return [rows[i][m] for i in range(m)]


def _resolve_targets(game: SimpleStochasticGame, move: Sequence[int]) -> list[int]:
    """Follow forced player moves from every position.

    Returns, per position, GOAL, a coin position, or ``_ZERO`` when the
    forced path cycles among player positions.
    """
    n = game.n
    target = [None] * (n + 1)
    target[GOAL] = GOAL
    for c in game.coins:
        target[c] = c
    for start in range(1, n + 1):
        if target[start] is not None:
            continue
        path = []
        on_path = set()
        k = start
        while target[k] is None and k not in on_path:
            path.append(k)
            on_path.add(k)
            k = move[k]
        t = target[k] if target[k] is not None else _ZERO
        for p in path:
            target[p] = t
    return target


def eval_strategy_pair(game: SimpleStochasticGame, x: PositionalStrategy,
                       y: PositionalStrategy) -> StrategyPairEvaluation:
    """Exact absorption probabilities of the chain induced by ``x`` and ``y``."""
    move = [0] * (game.n + 1)
    for k in game.max_positions:
        move[k] = game.successors[k][x.choices[k]]
    for k in game.min_positions:
        move[k] = game.successors[k][y.choices[k]]
    target = _resolve_targets(game, move)

    coins = game.coins
    links = {c: [target[s] for s in game.successors[c]] for c in coins}

    # coins from which GOAL is reachable at all
    back: dict[int, list[int]] = {}
    for c, ts in links.items():
        for t in ts:
            back.setdefault(t, []).append(c)
    live = set()
    stack = [GOAL]
    while stack:
        u = stack.pop()
        for c in back.get(u, ()):
            if c not in live:
                live.add(c)
                stack.append(c)

    idx = {c: i for i, c in enumerate(sorted(live))}
    m = len(idx)
    a = [[Fraction(0)] * m for _ in range(m)]
    b = [Fraction(0)] * m
    for c, i in idx.items():
        a[i][i] += 1
        for t in links[c]:
            if t == GOAL:
                b[i] += _HALF
            elif t in idx:
                a[i][idx[t]] -= _HALF
    sol = solve_linear(a, b) if m else []

    def value_of(t):
        if t == GOAL:
            return Fraction(1)
        if t in idx:
            return sol[idx[t]]
        return Fraction(0)

    return StrategyPairEvaluation(tuple(value_of(target[k]) for k in range(game.n + 1)))


def all_strategies(game: SimpleStochasticGame, player: PositionKind):
    positions = game.positions(player)
    for bits in itertools.product((0, 1), repeat=len(positions)):
        yield PositionalStrategy(player, dict(zip(positions, bits)))


def _check_cap(game: SimpleStochasticGame, cap: int):
    bits = len(game.max_positions) + len(game.min_positions)
    if bits > cap:
        raise OracleLimitError(
            f"{bits} player positions exceed the oracle cap of {cap}")


def payoff_table(game: SimpleStochasticGame, cap: int = DEFAULT_STRATEGY_CAP):
    """All evaluations ``table[i][j]`` for the i-th Max and j-th Min strategy."""
    _check_cap(game, cap)
    xs = list(all_strategies(game, PositionKind.MAX))
    ys = list(all_strategies(game, PositionKind.MIN))
    table = [[eval_strategy_pair(game, x, y).values for y in ys] for x in xs]
    return xs, ys, table


def enumerate_values(game: SimpleStochasticGame,
                     cap: int = DEFAULT_STRATEGY_CAP) -> tuple[Fraction, ...]:
    """``max_x min_y`` of the reach probability, per position."""
    _, _, table = payoff_table(game, cap)
    n1 = game.n + 1
    return tuple(
        max(min(row[j][k] for j in range(len(row))) for row in table)
        for k in range(n1))


def fib_r_step(m: int, r: int) -> int:
    """The r-step Fibonacci number F^(r)_m (F_1 = F_2 = 1, zero for m <= 0)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if m <= 0:
        return 0
    if m <= 2:
        return 1
    seq = [0] * (r - 1) + [1, 1]   # F_{3-r} .. F_2
    for _ in range(m - 2):
        seq.append(sum(seq[-r:]))
    return seq[-1]


def tails_run_prob(t: int, r: int) -> Fraction:
    """Probability that ``t`` fair tosses contain ``r`` consecutive tails."""
    return 1 - Fraction(fib_r_step(t + 2, r), 2 ** t)


def tails_run_prob_brute(t: int, r: int) -> Fraction:
    """Same quantity by enumerating all ``2**t`` toss sequences."""
    hits = 0
    for seq in range(2 ** t):
        run = best = 0
        for i in range(t):
            if seq >> i & 1:
                run += 1
                best = max(best, run)
            else:
                run = 0
        hits += best >= r
    return Fraction(hits, 2 ** t)
