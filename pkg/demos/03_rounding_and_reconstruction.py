"""
Rounded iteration and snapping to fractions
===========================================

The solver never carries exact iterates: every coin average is rounded down to
7*max(r, 6) bits.  The rounded trajectory trails the exact one by at most one
unit in the last place per step, and after the fixed budget the result is
close enough that the nearest fraction from above with denominator at most
4**r is the exact value.
"""

from fractions import Fraction

from ssgsolve import min_rational_geq, random_instance, solve, timed_trajectory
from ssgsolve.iterate import default_precision

game = random_instance(18)
p = default_precision(game.r)
print(f"n={game.n} r={game.r}, working precision {p} bits")

exact = list(timed_trajectory(game, 100))
rounded = list(timed_trajectory(game, 100, precision=p))
worst = max(
    (e - d) * 2 ** p
    for t in range(101)
    for e, d in zip(exact[t].fractions(), rounded[t].fractions()))
print(f"largest lag after 100 steps: {float(worst):.6f} ulp, bound 100 ulp")

sol = solve(game)
for k, (approx, value) in enumerate(zip(sol.approximation, sol.values)):
    if value.denominator > 1:
        print(f"position {k}: {float(approx.to_fraction()):.15f} -> {value}")

# The reconstruction step on its own.  With q = 6 the denominator 7 is out
# of reach, so the answer moves up to the next candidate.
v = Fraction(2, 7) - Fraction(1, 10 ** 12)
print(min_rational_geq(v, 16), min_rational_geq(v, 6))
