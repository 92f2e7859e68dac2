import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ssgsolve import (BudgetMode, Dyadic, PositionKind, ResourceLimitError,
                      StrategyVerificationError, ValueVector, bellman_violations,
                      enumerate_values, eval_strategy_pair, extract_strategies,
                      format_solution, gen_chain, gen_extremal, gen_random, iteration_budget,
                      make_game, mvi_step, random_instance, solve, tails_run_prob,
                      timed_trajectory, timed_values, unmodified_trajectory, unmodified_values,
                      unmodified_vi_step)
from ssgsolve.iterate import CoinDynamics, default_precision, initial_vector

from conftest import games

F = Fraction
MAX, MIN, AVE = PositionKind.MAX, PositionKind.MIN, PositionKind.AVE


def test_budget_values():
    # 2 * 31 * ln 2 * 64 = 2750.408..., 5 * ln 2 * 36 * 64 = 7985.05...
    assert 2 * 31 * math.log(2) * 64 == pytest.approx(2750.408, abs=0.001)
    assert 5 * math.log(2) * 36 * 64 == pytest.approx(7985.05, abs=0.01)
    assert iteration_budget(6, BudgetMode.EXTREMAL).iterations == 2751
    assert iteration_budget(6, BudgetMode.DIRECT).iterations == 7986
    assert iteration_budget(2, "extremal") == iteration_budget(6, "extremal")
    assert iteration_budget(0, "direct").iterations == 7986
    assert iteration_budget(7, "extremal").iterations == math.ceil(2 * 36 * math.log(2) * 128)
    assert iteration_budget(7, "extremal").r_eff == 7
    assert default_precision(3) == 42 and default_precision(10) == 70


def test_budget_rejects_negative():
    with pytest.raises(ValueError):
        iteration_budget(-1)


def test_mvi_step_game_b(game_b):
    v = initial_vector(game_b)
    v1 = mvi_step(game_b, v)
    assert v1.fractions() == (1, F(1, 2), 0)
    v2 = mvi_step(game_b, v1)
    assert v2.fractions() == (1, F(1, 2), 0)


def test_mvi_step_rounded_requires_precision():
    g = gen_extremal(2, 2)
    with pytest.raises(ValueError):
        mvi_step(g, initial_vector(g, 3), precision=4)


def test_extremal_two_steps():
    g = gen_extremal(3, 2)
    assert timed_values(g, 2)[2] == F(1, 4)
    v = initial_vector(g)
    for _ in range(2):
        v = mvi_step(g, v)
    assert v[2] == F(1, 4)


def test_all_ones_is_fixed_point():
    g = gen_extremal(6, 3)
    ones = ValueVector(tuple(Dyadic.one(5) for _ in range(g.n + 1)))
    assert set(mvi_step(g, ones).fractions()) == {1}
    assert set(mvi_step(g, ones, precision=5).fractions()) == {1}


def test_all_ones_coins_min_may_still_cycle():
    # A Min self-loop keeps value 0 however good the coins are.
    g = make_game([AVE, MIN], [(0, 2), (2, 2)])
    ones = ValueVector(tuple(Dyadic.one(3) for _ in range(3)))
    assert mvi_step(g, ones, precision=3).fractions() == (1, F(1, 2), 0)


def test_timed_values_game_b(game_b):
    assert timed_values(game_b, 0).fractions() == (1, 0, 0)
    assert timed_values(game_b, 1).fractions() == (1, F(1, 2), 0)


def test_timed_values_extremal_5_3():
    # Probability of three consecutive "first arc" outcomes within five tosses.
    assert timed_values(gen_extremal(5, 3), 5)[3] == 1 - F(24, 32) == F(1, 4)


def test_timed_values_rejects_negative(game_b):
    with pytest.raises(ValueError):
        timed_values(game_b, -1)


def test_unmodified_step(game_b):
    v = unmodified_vi_step(game_b, (1, 0, 0))
    assert v.fractions() == (1, F(1, 2), 0)


def test_unmodified_chain_propagates_one_per_step():
    g = gen_chain(6, 0)
    for t, v in enumerate(unmodified_trajectory(g, 6)):
        assert [k for k in range(7) if v[k] == 1] == list(range(t + 1))


@settings(max_examples=60, deadline=None)
@given(games(max_n=7, max_r=3))
def test_unmodified_below_modified(game):
    modified = [v.fractions() for v in timed_trajectory(game, 12)]
    plain = list(unmodified_trajectory(game, 12))
    for t in range(13):
        assert all(a <= b for a, b in zip(plain[t], modified[t]))


def test_solve_game_b(game_b):
    sol = solve(game_b)
    assert sol.values == (1, F(1, 2), 0)
    assert sol.values[1].denominator <= 4
    assert sol.min_strategy.choices == {2: 0}
    assert sol.max_strategy.choices == {}
    assert sol.iterations_run == 2751


@pytest.mark.parametrize("n, r", [(5, 3), (8, 4)])
def test_solve_extremal_all_one(n, r):
    assert set(solve(gen_extremal(n, r)).values) == {1}


def test_solve_without_coins():
    g = make_game([MAX, MIN, MIN], [(2, 3), (0, 1), (3, 3)])
    sol = solve(g)
    assert sol.iterations_run == 0
    assert sol.values == (1, 0, 0, 0) or sol.values == tuple(enumerate_values(g))
    assert sol.values == enumerate_values(g)


def test_solve_direct_budget(game_b):
    sol = solve(game_b, BudgetMode.DIRECT)
    assert sol.iterations_run == 7986
    assert sol.values == (1, F(1, 2), 0)


def test_r_cap():
    with pytest.raises(ResourceLimitError):
        solve(gen_extremal(30, 30))
    with pytest.raises(ResourceLimitError):
        solve(gen_extremal(5, 3), r_cap=2)


def test_extract_max_prefers_goal():
    g = make_game([MAX, MIN], [(2, 0), (2, 2)])
    x, y = extract_strategies(g, (1, 1, 0))
    assert x.choices == {1: 1}


def test_extract_avoids_value_preserving_cycle():
    # Max at 1 could move to coin 2, which bounces straight back: value-preserving
    # but never reaches GOAL.
    g = make_game([MAX, AVE], [(2, 0), (1, 1)])
    x, _ = extract_strategies(g, (1, 1, 1))
    assert x.choices == {1: 1}
    g = make_game([AVE, MAX], [(2, 2), (1, 0)])
    x, _ = extract_strategies(g, (1, 1, 1))
    assert x.choices == {2: 1}


def test_extract_rejects_wrong_values(game_b):
    with pytest.raises(StrategyVerificationError):
        extract_strategies(game_b, (1, F(1, 3), 0))


def test_format_solution(game_b):
    text = format_solution(solve(game_b), strategies=True)
    assert text == "value 0 1/1\nvalue 1 1/2\nvalue 2 0/1\nstrategy min 2 0\n"


@settings(max_examples=80, deadline=None)
@given(games(max_n=7, max_r=3))
def test_solve_matches_oracle_and_is_consistent(game):
    sol = solve(game)
    assert sol.values == enumerate_values(game)
    assert bellman_violations(game, sol.values) == []
    assert eval_strategy_pair(game, sol.max_strategy, sol.min_strategy).values == sol.values
    assert all(v.denominator <= 4 ** game.r for v in sol.values)


def test_coin_dynamics_matches_plain_iteration():
    for seed in range(40):
        g = random_instance(seed, max_n=10, max_r=4)
        p = 42
        engine = CoinDynamics(g, p)
        cv = [0] * g.r
        for v in timed_trajectory(g, 60, precision=p):
            assert [v[c].mantissa for c in g.coins] == cv
            cv = engine.step(cv)


def test_larger_random_games_verify():
    for seed in range(20):
        g = gen_random(60, 8, 26, 26, seed)
        sol = solve(g)
        assert bellman_violations(g, sol.values) == []
        assert all(v.denominator <= 4 ** 8 for v in sol.values)


def test_reconstruction_is_smallest_fraction_above_approximation():
    for seed in range(30):
        g = random_instance(seed)
        sol = solve(g)
        bound = 4 ** g.r
        for approx, exact in zip(sol.approximation, sol.values):
            a = approx.to_fraction()
            assert a <= exact
            assert exact - a < F(1, 2 ** (4 * 6))
            # nothing with a small enough denominator fits in between
            for b in range(1, min(bound, 300) + 1):
                lo = -(-a.numerator * b // a.denominator)
                assert F(lo, b) >= exact


def test_extremal_timed_matches_tails_formula_small():
    for r in range(1, 5):
        g = gen_extremal(r + 1, r)
        for t, v in enumerate(timed_trajectory(g, 20)):
            assert v[r] == tails_run_prob(t, r)


@settings(max_examples=60, deadline=None)
@given(games(max_n=7, max_r=3, min_r=1))
def test_unmodified_catches_up_after_stretched_horizon(game):
    stretch = game.n - game.r + 1
    modified = [v.fractions() for v in timed_trajectory(game, 8)]
    plain = [v.fractions() for v in unmodified_trajectory(game, 8 * stretch)]
    for t in range(1, 9):
        assert all(a >= b for a, b in zip(plain[t * stretch], modified[t]))


def test_stretched_horizon_needs_t_at_least_one():
    # Max next to GOAL: the coin-timed game at t = 0 is already won, while the
    # move-timed game with zero moves is not.
    g = make_game([AVE, MAX], [(0, 0), (0, 0)])
    assert timed_values(g, 0)[2] == 1
    assert unmodified_values(g, 0)[2] == 0


def test_oracle_agreement_on_fractional_instances():
    hits = 0
    seed = 5000
    while hits < 100:
        g = random_instance(seed)
        seed += 1
        want = enumerate_values(g)
        if all(v.denominator == 1 for v in want):
            continue
        hits += 1
        sol = solve(g)
        assert sol.values == want, seed - 1
        assert eval_strategy_pair(g, sol.max_strategy, sol.min_strategy).values == want


def test_final_gap_below_reconstruction_threshold():
    for seed in range(40):
        g = random_instance(seed, max_r=4)
        sol = solve(g)
        slack = Fraction(1, 2 ** (4 * sol.budget.r_eff))
        for approx, exact in zip(sol.approximation, sol.values):
            assert 0 <= exact - approx.to_fraction() < slack
