"""Modified value iteration and the exact solver built on it.

Each iteration solves the deterministic game obtained by freezing the coin
positions at their current values, then resets every coin to the average of
its two successors.  After ``t`` iterations the vector holds the values of
the game in which Max loses on meeting his ``t+1``-st coin toss.  The solver
runs a fixed number of rounded-down iterations and then snaps every entry to
the smallest fraction above it with denominator at most ``4**r``.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .dgg import DggSolution, DggView, retrograde, solve_dgg
from .game import GOAL, PositionKind, PositionalStrategy, SimpleStochasticGame
from .numerics import Dyadic, as_fraction, avg_floor, exact_avg, min_rational_geq
from .oracle import ResourceLimitError, eval_strategy_pair

DEFAULT_R_CAP = 24


class BudgetMode(enum.Enum):
    EXTREMAL = "extremal"
    DIRECT = "direct"


class StrategyVerificationError(AssertionError):
    """Extracted strategies failed to reproduce the values they came from."""


@dataclass(frozen=True)
class IterationBudget:
    mode: BudgetMode
    r_eff: int
    iterations: int


def effective_r(r: int) -> int:
    return max(r, 6)


def iteration_budget(r: int, mode: BudgetMode = BudgetMode.EXTREMAL) -> IterationBudget:
    """Number of main-loop iterations guaranteeing a gap below ``2**(-5r')``.

    EXTREMAL: ``2 (5r'+1) ln 2 * 2**r'``; DIRECT: ``5 ln 2 * r'**2 * 2**r'``,
    both rounded up, with ``r' = max(r, 6)``.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    mode = BudgetMode(mode)
    re = effective_r(r)
    if mode is BudgetMode.EXTREMAL:
        t = 2 * (5 * re + 1) * math.log(2) * 2 ** re
    else:
        t = 5 * math.log(2) * re * re * 2 ** re
    return IterationBudget(mode, re, max(1, math.ceil(t)))


def default_precision(r: int) -> int:
    return 7 * effective_r(r)


@dataclass(frozen=True)
class ValueVector:
    """Per-position values, GOAL first.

    ``rounded`` is the bit precision the entries were floored to, or ``None``
    when every entry is exact.
    """

    values: tuple
    rounded: int | None = None

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(as_fraction(v) for v in self.values)


def initial_vector(game: SimpleStochasticGame, precision: int = 0) -> ValueVector:
    vals = [Dyadic.zero(precision)] * (game.n + 1)
    vals[GOAL] = Dyadic.one(precision)
    return ValueVector(tuple(vals), None)


def _dgg_of(game: SimpleStochasticGame, v: ValueVector) -> DggSolution:
    return solve_dgg(DggView(game, {c: v[c] for c in game.coins}))


def _refresh(game: SimpleStochasticGame, v: ValueVector) -> ValueVector:
    """Replace player entries by the DGG values under the current coin values."""
    p = max(x.precision for x in v)
    return ValueVector(tuple(x.at(p) for x in _dgg_of(game, v).values), v.rounded)


def mvi_step(game: SimpleStochasticGame, v: ValueVector,
             precision: int | None = None) -> ValueVector:
    """One loop body: solve the DGG, then average at every coin.

    ``precision=None`` averages exactly (gaining a bit per step); an integer
    floors the averages to that many bits, and then every entry of ``v``
    must already be at that precision.
    """
    if precision is not None and any(x.precision != precision for x in v):
        raise ValueError(f"all entries must be at precision {precision}")
    dgg = _dgg_of(game, v).values
    vals = list(dgg)
    avg = exact_avg if precision is None else avg_floor
    for c in game.coins:
        s1, s2 = game.successors[c]
        vals[c] = avg(dgg[s1], dgg[s2])
    if precision is None:
        p = max(x.precision for x in vals)
        vals = [x.at(p) for x in vals]
    return ValueVector(tuple(vals), precision)


def timed_trajectory(game: SimpleStochasticGame, t_max: int,
                     precision: int | None = None) -> Iterator[ValueVector]:
    """Yield the vectors for time bounds ``0, 1, ..., t_max``."""
    v = _refresh(game, ValueVector(initial_vector(game, precision or 0).values, precision))
    yield v
    for _ in range(t_max):
        v = _refresh(game, mvi_step(game, v, precision))
        yield v


def timed_values(game: SimpleStochasticGame, t: int,
                 precision: int | None = None) -> ValueVector:
    """Values of the time-bounded game where Max loses at coin toss ``t+1``.

    With ``precision`` set, the rounded-down iterate the solver would hold.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    for v in timed_trajectory(game, t, precision):
        pass
    return v


def unmodified_vi_step(game: SimpleStochasticGame, v: Sequence) -> ValueVector:
    """One synchronous Bellman backup over exact rationals."""
    old = [as_fraction(x) for x in v]
    new = list(old)
    new[GOAL] = Fraction(1)
    kinds = game.kinds
    for k in range(1, game.n + 1):
        a, b = (old[s] for s in game.successors[k])
        kind = kinds[k]
        if kind is PositionKind.MAX:
            new[k] = max(a, b)
        elif kind is PositionKind.MIN:
            new[k] = min(a, b)
        else:
            new[k] = (a + b) / 2
    return ValueVector(tuple(new), None)


def unmodified_trajectory(game: SimpleStochasticGame, t_max: int) -> Iterator[ValueVector]:
    v = ValueVector(tuple(Fraction(int(k == GOAL)) for k in range(game.n + 1)))
    yield v
    for _ in range(t_max):
        v = unmodified_vi_step(game, v)
        yield v


def unmodified_values(game: SimpleStochasticGame, t: int) -> ValueVector:
    for v in unmodified_trajectory(game, t):
        pass
    return v


class CoinDynamics:
    """Rounded coin-value iteration on integer mantissas.

    The DGG answer depends only on how the coin payoffs are ordered (ties,
    and coincidences with 0 and 1 included).  For each ordering seen, one
    full retrograde pass records which coin (or GOAL, or the zero payoff)
    supplies the value of each coin's successors; later iterations with the
    same ordering reuse it and cost O(r log r).
    """

    def __init__(self, game: SimpleStochasticGame, precision: int,
                 cache_size: int = 1 << 16):
        self.game = game
        self.precision = precision
        self.one = 1 << precision
        self.coins = game.coins
        self.cache: dict[tuple[int, ...], tuple[tuple[int, int], ...]] = {}
        self.cache_size = cache_size
        self.full_solves = 0

    def _sources(self, cv: list[int]) -> tuple[tuple[int, int], ...]:
        one = self.one
        ranks = {v: i for i, v in enumerate(sorted({0, one, *cv}))}
        key = tuple(ranks[v] for v in cv)
        hit = self.cache.get(key)
        if hit is None:
            hit = self._resolve(cv)
            if len(self.cache) >= self.cache_size:
                self.cache.clear()
            self.cache[key] = hit
        return hit

    def _resolve(self, cv: list[int]) -> tuple[tuple[int, int], ...]:
        game = self.game
        r = len(self.coins)
        payoff = [0] * (game.n + 1)
        for c, m in zip(self.coins, cv):
            payoff[c] = m
        self.full_solves += 1
        vals = retrograde(game, payoff, self.one, 0).values
        rep = {0: r, self.one: r + 1}
        for i, m in enumerate(cv):
            rep.setdefault(m, i)
        return tuple((rep[vals[s1]], rep[vals[s2]])
                     for s1, s2 in (game.successors[c] for c in self.coins))

    def step(self, cv: list[int]) -> list[int]:
        ext = [*cv, 0, self.one]
        return [(ext[a] + ext[b]) >> 1 for a, b in self._sources(cv)]

    def run(self, iterations: int) -> list[int]:
        cv = [0] * len(self.coins)
        for _ in range(iterations):
            cv = self.step(cv)
        return cv


@dataclass(frozen=True)
class Solution:
    values: tuple[Fraction, ...]
    max_strategy: PositionalStrategy
    min_strategy: PositionalStrategy
    iterations_run: int
    budget: IterationBudget
    approximation: ValueVector = field(repr=False)
    final_dgg: DggSolution = field(repr=False)
    full_dgg_solves: int = 0


def solve(game: SimpleStochasticGame, budget_mode: BudgetMode = BudgetMode.EXTREMAL, *,
          precision: int | None = None, r_cap: int = DEFAULT_R_CAP) -> Solution:
    """Exact values and optimal positional strategies for ``game``."""
    r = game.r
    if r > r_cap:
        raise ResourceLimitError(f"r = {r} exceeds cap {r_cap}")
    budget = iteration_budget(r, budget_mode)
    p = default_precision(r) if precision is None else precision
    if p < 1:
        raise ValueError("precision must be at least 1 bit")
    iterations = budget.iterations if r else 0

    engine = CoinDynamics(game, p)
    cv = engine.run(iterations)
    payoff = [0] * (game.n + 1)
    for c, m in zip(game.coins, cv):
        payoff[c] = m
    final = retrograde(game, payoff, engine.one, 0)

    bound = 4 ** r
    memo: dict[int, Fraction] = {}
    values = []
    for m in final.values:
        x = memo.get(m)
        if x is None:
            x = memo[m] = min_rational_geq(Dyadic(m, p), bound)
        values.append(x)
    values = tuple(values)
    approx = ValueVector(tuple(Dyadic(m, p) for m in final.values), p)
    x, y = extract_strategies(game, values)
    return Solution(values, x, y, iterations, budget, approx, final,
                    engine.full_solves + 1)


def extract_strategies(game: SimpleStochasticGame, values: Sequence[Fraction], *,
                       verify: bool = True) -> tuple[PositionalStrategy, PositionalStrategy]:
    """Optimal positional strategies given the exact values.

    Min takes the lowest slot attaining the smaller successor value.  Max
    must also make progress: within each positive value class, a reverse
    BFS starts from GOAL and from coins that can leave the class, passes
    through coins and through Min positions along Min's chosen arc, and
    records for each Max position the arc it was reached by.
    """
    vals = [v if isinstance(v, Fraction) else as_fraction(v) for v in values]
    # compare small integer ranks instead of fractions
    rank = {v: i for i, v in enumerate(sorted(set(vals)))}
    cls = [rank[v] for v in vals]
    zero = rank.get(Fraction(0), -1)
    succ = game.successors
    kinds = game.kinds

    y = {}
    for k in game.min_positions:
        s1, s2 = succ[k]
        y[k] = 0 if cls[s1] <= cls[s2] else 1

    x: dict[int, int] = {}
    seen = [False] * (game.n + 1)
    queue = deque()
    if cls[GOAL] != zero:
        seen[GOAL] = True
        queue.append(GOAL)
    for c in game.coins:
        if cls[c] != zero and any(cls[s] != cls[c] for s in succ[c]):
            seen[c] = True
            queue.append(c)
    while queue:
        u = queue.popleft()
        cu = cls[u]
        for p, slot in game.predecessors[u]:
            if seen[p] or cls[p] != cu:
                continue
            kind = kinds[p]
            if kind is PositionKind.MAX:
                x[p] = slot
            elif kind is PositionKind.MIN and y[p] != slot:
                continue
            seen[p] = True
            queue.append(p)
    for k in game.max_positions:
        if k not in x:
            s1, s2 = succ[k]
            x[k] = 0 if cls[s1] >= cls[s2] else 1

    xs = PositionalStrategy(PositionKind.MAX, x)
    ys = PositionalStrategy(PositionKind.MIN, y)
    if verify:
        got = eval_strategy_pair(game, xs, ys).values
        if tuple(got) != tuple(vals):
            bad = next(k for k in range(game.n + 1) if got[k] != vals[k])
            raise StrategyVerificationError(
                f"strategy verification failed at position {bad}: "
                f"{got[bad]} != {vals[bad]}")
    return xs, ys


def format_values(values: Sequence[Fraction]) -> str:
    return "".join(f"value {k} {v.numerator}/{v.denominator}\n"
                   for k, v in enumerate(values))


def format_solution(solution: Solution, strategies: bool = False) -> str:
    out = format_values(solution.values)
    if strategies:
        for name, strat in (("max", solution.max_strategy), ("min", solution.min_strategy)):
            for k in sorted(strat.choices):
                out += f"strategy {name} {k} {strat.choices[k]}\n"
    return out


def bellman_violations(game: SimpleStochasticGame, values: Sequence[Fraction]) -> list[int]:
    """Positions where ``values`` breaks the local optimality equations."""
    bad = []
    if values[GOAL] != 1:
        bad.append(GOAL)
    for k in range(1, game.n + 1):
        a, b = (values[s] for s in game.successors[k])
        kind = game.kinds[k]
        want = max(a, b) if kind is PositionKind.MAX else \
            min(a, b) if kind is PositionKind.MIN else (a + b) / 2
        if values[k] != want:
            bad.append(k)
    return bad
