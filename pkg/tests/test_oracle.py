import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ssgsolve import (OracleLimitError, PositionKind, PositionalStrategy, enumerate_values,
                      eval_strategy_pair, fib_r_step, gen_extremal, gen_random, make_game,
                      parse_game, tails_run_prob)
from ssgsolve.oracle import payoff_table, solve_linear, tails_run_prob_brute

from conftest import games

F = Fraction
MAX, MIN, AVE = PositionKind.MAX, PositionKind.MIN, PositionKind.AVE


def strat(player, choices):
    return PositionalStrategy(player, choices)


def test_game_b_forced(game_b):
    u = eval_strategy_pair(game_b, strat(MAX, {}), strat(MIN, {2: 0}))
    assert u.values == (1, F(1, 2), 0)
    assert enumerate_values(game_b) == (1, F(1, 2), 0)


def test_extremal_min_to_goal_all_one():
    g = gen_extremal(5, 3)
    u = eval_strategy_pair(g, strat(MAX, {}), strat(MIN, {4: 0, 5: 1}))
    assert set(u.values) == {1}


def test_unreachable_goal_is_zero():
    g = make_game([AVE], [(1, 1)])
    assert eval_strategy_pair(g, strat(MAX, {}), strat(MIN, {})).values == (1, 0)


def test_fig4_all_one(fig4):
    assert set(enumerate_values(fig4)) == {1}


def test_chain_by_halving():
    g = parse_game("ssg 3 2\n1 AVE 0 3\n2 AVE 1 3\n3 MIN 3 3\n")
    assert enumerate_values(g) == (1, F(1, 2), F(1, 4), 0)


def test_player_cycle_is_zero():
    g = make_game([MAX, MAX, AVE], [(2, 3), (1, 3), (0, 1)])
    u = eval_strategy_pair(g, strat(MAX, {1: 0, 2: 0}), strat(MIN, {}))
    assert u.values == (1, 0, 0, F(1, 2))
    assert enumerate_values(g) == (1, 1, 1, 1)


def test_strategy_cap():
    g = gen_random(22, 1, 11, 10, seed=3)
    with pytest.raises(OracleLimitError):
        enumerate_values(g)
    with pytest.raises(OracleLimitError):
        enumerate_values(gen_random(5, 1, 2, 2, seed=3), cap=3)


def test_solve_linear():
    a = [[F(2), F(1)], [F(1), F(3)]]
    assert solve_linear(a, [F(3), F(5)]) == [F(4, 5), F(7, 5)]
    assert solve_linear([[F(0), F(1)], [F(1), F(0)]], [F(2), F(3)]) == [3, 2]


@settings(max_examples=150, deadline=None)
@given(games(max_n=7, max_r=3))
def test_evaluation_satisfies_chain_equations(game):
    xs = {k: 0 for k in game.max_positions}
    ys = {k: 1 for k in game.min_positions}
    u = eval_strategy_pair(game, strat(MAX, xs), strat(MIN, ys)).values
    choice = xs | ys
    assert u[0] == 1
    for k in range(1, game.n + 1):
        assert 0 <= u[k] <= 1
        s = game.successors[k]
        if game.kinds[k] is AVE:
            assert u[k] == (u[s[0]] + u[s[1]]) / 2
        else:
            assert u[k] == u[s[choice[k]]] or u[k] == 0


@settings(max_examples=100, deadline=None)
@given(games(max_n=7, max_r=3))
def test_saddle_point(game):
    xs, ys, table = payoff_table(game)
    values = enumerate_values(game)
    n1 = game.n + 1
    # a positional x* attaining the max-min at every position at once
    x_star = next(i for i, row in enumerate(table)
                  if all(min(u[k] for u in row) == values[k] for k in range(n1)))
    y_star = next(j for j in range(len(ys))
                  if all(max(row[j][k] for row in table) == values[k] for k in range(n1)))
    for k in range(n1):
        assert min(u[k] for u in table[x_star]) == max(row[y_star][k] for row in table)


def test_fib_r_step_values():
    assert [fib_r_step(m, 5) for m in (-3, 0)] == [0, 0]
    assert [fib_r_step(m, 2) for m in range(1, 7)] == [1, 1, 2, 3, 5, 8]
    assert [fib_r_step(m, 3) for m in range(1, 8)] == [1, 1, 2, 4, 7, 13, 24]
    assert all(fib_r_step(m, 1) == 1 for m in range(1, 10))


def test_fib_growth_bound():
    for r in range(1, 9):
        phi = 2 - F(1, 2 ** r)
        for m in range(1, 60):
            assert fib_r_step(m, r) <= phi ** (m - 1)


def test_tails_run_prob_examples():
    assert tails_run_prob(2, 2) == F(1, 4)
    assert tails_run_prob(3, 2) == F(3, 8)
    assert tails_run_prob(5, 3) == F(1, 4)
    for t in range(12):
        assert tails_run_prob(t, 1) == 1 - F(1, 2 ** t)


def test_tails_run_prob_matches_enumeration():
    for t in range(17):
        for r in range(1, t + 1):
            assert tails_run_prob(t, r) == tails_run_prob_brute(t, r)


def test_enumerate_values_against_independent_definition():
    g = make_game([MAX, MIN, AVE], [(2, 3), (0, 3), (1, 2)])
    xs = [dict(zip(g.max_positions, b)) for b in itertools.product((0, 1), repeat=1)]
    ys = [dict(zip(g.min_positions, b)) for b in itertools.product((0, 1), repeat=1)]
    want = [max(min(eval_strategy_pair(g, strat(MAX, x), strat(MIN, y))[k] for y in ys)
                for x in xs) for k in range(g.n + 1)]
    assert list(enumerate_values(g)) == want
