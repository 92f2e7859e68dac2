"""Game families: the extremal games E(n, r), chains, and seeded random games.

Random games use SplitMix64 so instances are reproducible from the seed on
any platform:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)                       (all mod 2**64)

A draw below ``k`` is ``(out * k) >> 64``.  Kinds are laid out as
``[MAX]*max_count + [MIN]*min_count + [AVE]*r``, Fisher-Yates shuffled
(``i`` from ``n-1`` down to 1, swap with a draw below ``i+1``), then each
position ``1..n`` draws its two successors below ``n+1`` in slot order.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .game import PositionKind, SimpleStochasticGame, make_game

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        return (self.next() * k) >> 64


class Family(enum.Enum):
    EXTREMAL = "extremal"
    CHAIN = "chain"
    RANDOM = "random"


@dataclass(frozen=True)
class GeneratorSpec:
    family: Family
    n: int
    r: int
    max_count: int = 0
    min_count: int = 0
    seed: int = 0

    def build(self) -> SimpleStochasticGame:
        if self.family is Family.EXTREMAL:
            return gen_extremal(self.n, self.r)
        if self.family is Family.CHAIN:
            return gen_chain(self.n, self.r)
        return gen_random(self.n, self.r, self.max_count, self.min_count, self.seed)


def gen_extremal(n: int, r: int) -> SimpleStochasticGame:
    """E(n, r): coins 1..r, coin 1 -> {GOAL, r}, coin i -> {i-1, r};
    Min positions r+1..n with both arcs to GOAL."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got n={n}, r={r}")
    kinds = [PositionKind.AVE] * r + [PositionKind.MIN] * (n - r)
    succ = [(i - 1, r) for i in range(1, r + 1)] + [(0, 0)] * (n - r)
    return make_game(kinds, succ, comment=f"extremal n={n} r={r}")


def gen_chain(n: int, r: int) -> SimpleStochasticGame:
    """Min positions n..r+1 each stepping down to the next, then coins r..1
    likewise, coin 1 entering GOAL on both arcs."""
    if not 0 <= r <= n or n < 1:
        raise ValueError(f"need 0 <= r <= n and n >= 1, got n={n}, r={r}")
    kinds = [PositionKind.AVE] * r + [PositionKind.MIN] * (n - r)
    succ = [(k - 1, k - 1) for k in range(1, n + 1)]
    return make_game(kinds, succ, comment=f"chain n={n} r={r}")


def gen_random(n: int, r: int, max_count: int, min_count: int,
               seed: int) -> SimpleStochasticGame:
    if max_count + min_count + r != n or min(n, r, max_count, min_count) < 0 or n < 1:
        raise ValueError(
            f"counts do not add up: max {max_count} + min {min_count} + r {r} != n {n}")
    rng = SplitMix64(seed)
    kinds = ([PositionKind.MAX] * max_count + [PositionKind.MIN] * min_count
             + [PositionKind.AVE] * r)
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        kinds[i], kinds[j] = kinds[j], kinds[i]
    succ = [(rng.below(n + 1), rng.below(n + 1)) for _ in range(n)]
    return make_game(kinds, succ, comment=(
        f"random n={n} r={r} max={max_count} min={min_count} seed={seed}"))


def random_instance(seed: int, max_n: int = 12, max_r: int = 4,
                    max_players: int = 8) -> SimpleStochasticGame:
    """A random game whose sizes are also drawn from ``seed``.

    ``1 <= r <= max_r`` and ``|V_1| + |V_2| <= max_players`` with
    ``n <= max_n``.
    """
    rng = SplitMix64(seed ^ 0x5EED5EED5EED5EED)
    r = 1 + rng.below(max_r)
    players = rng.below(min(max_players, max_n - r) + 1)
    max_count = rng.below(players + 1)
    return gen_random(r + players, r, max_count, players - max_count, seed)
