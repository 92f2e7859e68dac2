"""Retrograde analysis of deterministic graphical games.

A deterministic graphical game here is a simple stochastic game whose coin
positions are frozen into terminals with fixed payoffs.  GOAL pays 1 and
infinite play pays 0, so Min can always fall back on cycling.

Terminal payoffs are processed in descending order.  For each payoff class a
BFS over reverse arcs assigns the class value to every Max position that can
move into an already-assigned position, and to every Min position all of
whose arcs have now been seen from assigned positions (tracked with an
out-arc counter).  Whatever is left unassigned at the end gets 0.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .game import GOAL, PositionKind, SimpleStochasticGame
from .numerics import Dyadic

_MAX = PositionKind.MAX
_MIN = PositionKind.MIN
_AVE = PositionKind.AVE


@dataclass(frozen=True)
class DggView:
    """``game`` with each coin position replaced by a terminal payoff."""

    game: SimpleStochasticGame
    terminal_payoffs: Mapping[int, Dyadic]

    def __post_init__(self):
        coins = set(self.game.coins)
        if set(self.terminal_payoffs) != coins:
            raise ValueError("terminal payoffs must cover exactly the coin positions")
        for c, v in self.terminal_payoffs.items():
            if not 0 <= v <= 1:
                raise ValueError(f"payoff of {c} outside [0, 1]: {v}")


@dataclass(frozen=True)
class DggSolution:
    values: tuple[Any, ...]
    witness: tuple[int | None, ...]
    order: tuple[int, ...] = field(repr=False)
    classes: tuple[tuple[Any, tuple[int, ...]], ...] = field(repr=False)


def retrograde(game: SimpleStochasticGame, payoff: Mapping[int, Any] | Sequence[Any],
               one: Any, zero: Any) -> DggSolution:
    """Solve the DGG for any totally ordered, hashable payoff type.

    ``payoff[c]`` is read for every coin position ``c``; payoffs must lie in
    ``[zero, one]``.  Payoffs equal to ``one`` share GOAL's class.
    """
    n = game.n
    kinds = game.kinds
    preds = game.predecessors
    values: list[Any] = [None] * (n + 1)
    witness: list[int | None] = [None] * (n + 1)
    pending = [2] * (n + 1)

    by_value: dict[Any, list[int]] = {one: [GOAL]}
    for c in game.coins:
        by_value.setdefault(payoff[c], []).append(c)

    order: list[int] = []
    classes = []
    for val in sorted(by_value, reverse=True):
        if not val > zero:
            break
        seeds = by_value[val]
        for t in seeds:
            values[t] = val
        order.extend(seeds)
        members = list(seeds)
        queue = deque(seeds)
        while queue:
            u = queue.popleft()
            for p, slot in preds[u]:
                if values[p] is not None:
                    continue
                kind = kinds[p]
                if kind is _MAX:
                    pass
                elif kind is _MIN:
                    pending[p] -= 1
                    if pending[p]:
                        continue
                else:
                    continue
                values[p] = val
                witness[p] = slot
                order.append(p)
                members.append(p)
                queue.append(p)
        classes.append((val, tuple(members)))

    for k in range(n + 1):
        if values[k] is None:
            values[k] = payoff[k] if kinds[k] is _AVE else zero
    return DggSolution(tuple(values), tuple(witness), tuple(order), tuple(classes))


def solve_dgg(view: DggView) -> DggSolution:
    """Values of the deterministic game described by ``view``.

    Returned values are :class:`Dyadic` at the largest payoff precision.
    """
    p = max((v.precision for v in view.terminal_payoffs.values()), default=0)
    payoff = {c: v.at(p) for c, v in view.terminal_payoffs.items()}
    return retrograde(view.game, payoff, Dyadic.one(p), Dyadic.zero(p))


def assignment_order(solution: DggSolution) -> tuple[int, ...]:
    """Positions in the order they received their (positive) values."""
    return solution.order


def format_classes(solution: DggSolution, precision: int | None = None) -> str:
    """One line per positive value class, members in assignment order.

    Integer class values are read as mantissas at ``precision`` bits.
    """
    lines = []
    for val, members in solution.classes:
        if precision is not None and isinstance(val, int):
            val = Fraction(val, 1 << precision)
        if isinstance(val, Fraction):
            val = f"{val.numerator}/{val.denominator}"
        lines.append(f"class {val}: {' '.join(map(str, members))}")
    return "\n".join(lines)
