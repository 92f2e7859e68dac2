"""Exact solver for simple stochastic games with few coin toss positions."""
from .dgg import DggSolution, DggView, assignment_order, solve_dgg
from .game import (GOAL, GameFormatError, PositionKind, PositionalStrategy,
                   SimpleStochasticGame, Violation, make_game, parse_game,
                   serialize_game, validate)
from .generators import (Family, GeneratorSpec, SplitMix64, gen_chain, gen_extremal,
                         gen_random, random_instance)
from .iterate import (BudgetMode, IterationBudget, Solution, StrategyVerificationError,
                      ValueVector, bellman_violations, extract_strategies, format_solution,
                      iteration_budget, mvi_step, solve, timed_trajectory, timed_values,
                      unmodified_trajectory, unmodified_values, unmodified_vi_step)
from .numerics import Dyadic, PrecisionMismatch, Rational, avg_floor, exact_avg, min_rational_geq
from .oracle import (OracleLimitError, ResourceLimitError, StrategyPairEvaluation,
                     enumerate_values, eval_strategy_pair, fib_r_step, tails_run_prob)

__version__ = "0.1.0"
