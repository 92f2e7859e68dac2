"""
Solving a small game
====================

Parse a game, solve it exactly, and check the answer against brute force.
"""

from ssgsolve import enumerate_values, eval_strategy_pair, parse_game, solve
from ssgsolve.iterate import format_solution

# Five positions, three coin tosses.  Every position here has value 1 even
# though no Max position exists: Min can never keep the pebble away forever.
text = """
ssg 5 3
1 MIN 4 2
2 AVE 5 4
3 AVE 0 3
4 AVE 4 5
5 MIN 0 3
"""
game = parse_game(text)
sol = solve(game)
print(format_solution(sol, strategies=True))

# A game with a genuinely fractional answer: coin 1 flips between GOAL and
# coin 2, coin 2 between coin 1 and a Min trap.
game = parse_game("""
ssg 4 2
1 AVE 0 2
2 AVE 1 3
3 MIN 3 4
4 MAX 0 3
""")
sol = solve(game)
print(format_solution(sol, strategies=True))

# The oracle tries every pair of positional strategies and solves each
# induced Markov chain exactly.
print("oracle agrees:", enumerate_values(game) == sol.values)
u = eval_strategy_pair(game, sol.max_strategy, sol.min_strategy)
print("strategies achieve the values:", u.values == sol.values)
print("iterations run:", sol.iterations_run, "of budget", sol.budget)
