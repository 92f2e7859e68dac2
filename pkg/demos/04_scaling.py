"""
Running time against n
======================

With r fixed the number of iterations is fixed, and each iteration after the
first few distinct coin orderings costs O(r log r).  The remaining work is a
handful of linear passes, so wall time grows linearly in n.
"""

import time

from ssgsolve import gen_chain, gen_random, solve

for n in (1_000, 10_000, 100_000):
    game = gen_chain(n, 6)
    start = time.perf_counter()
    sol = solve(game)
    ms = (time.perf_counter() - start) * 1000
    print(f"chain  n={n:>7}  r=6  iterations={sol.iterations_run}  "
          f"full DGG solves={sol.full_dgg_solves}  {ms:8.1f} ms")

for r in (2, 4, 6, 8):
    game = gen_random(2000, r, 1000 - r // 2, 1000 - r + r // 2, seed=r)
    start = time.perf_counter()
    sol = solve(game)
    ms = (time.perf_counter() - start) * 1000
    print(f"random n=2000 r={r}  iterations={sol.iterations_run}  "
          f"full DGG solves={sol.full_dgg_solves}  {ms:8.1f} ms")
