"""
How slowly can value iteration converge?
========================================

On the extremal games E(n, r) every position has value 1, yet the value after
t coin tosses at the last coin is the chance of r tails in a row within t fair
tosses.  That probability has a closed form in r-step Fibonacci numbers.
"""

from fractions import Fraction

from ssgsolve import fib_r_step, gen_extremal, tails_run_prob, timed_trajectory

r = 4
game = gen_extremal(r + 2, r)

print(" t   value at coin r     closed form   direct bound   extremal bound")
for t, v in enumerate(timed_trajectory(game, 60)):
    if t % 6:
        continue
    closed = tails_run_prob(t, r)
    gap = 1 - v[r].to_fraction()
    direct = (1 - Fraction(1, 2 ** r)) ** (t // r)
    extremal = 2 * (1 - Fraction(1, 2 ** (r + 1))) ** t
    assert v[r] == closed and gap <= direct
    print(f"{t:2d}   {float(v[r]):.6f}            {float(closed):.6f}      "
          f"{float(direct):.6f}       {float(extremal):.6f}")

# The Fibonacci numbers themselves
print([fib_r_step(m, r) for m in range(1, 12)])
