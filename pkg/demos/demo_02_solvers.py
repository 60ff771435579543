"""
Four exact solvers for the weighted number of tardy jobs
========================================================

All solvers maximise the total weight of early jobs.  The brute-force
solvers are ground truth for tiny inputs.  Lawler-Moore tabulates the time
horizon.  The Pareto dynamic program keeps only nondominated (time, weight)
states, so it also copes with the huge digit-vector numbers of reductions.
"""

import random

import numpy as np

from schedred import Instance, solve_lawler_moore, solve_pareto, solve_perm_bruteforce, solve_subset_bruteforce
from schedred.solvers import pareto_front

rng = random.Random(1)
inst = Instance.from_tuples((rng.randint(1, 9), rng.randint(1, 9), rng.randint(3, 25)) for _ in range(8))
for j in inst.jobs:
    print(f"job {j.id}: p={j.p} w={j.w} d={j.d}")

# %%
# Every solver reports the same optimum and a feasible witness early set.
for solver in (solve_perm_bruteforce, solve_subset_bruteforce, solve_pareto, solve_lawler_moore):
    res = solver(inst)
    print(f"{solver.__name__:24s} optimum={res.optimum_early_weight} early={res.witness_early_set}")

# %%
# The complete Pareto front: early processing time against early weight.
front, explored = pareto_front(inst, bound=False)
print("front P:", np.array(front.P))
print("front W:", np.array(front.W))
print("states explored:", explored)

# %%
# Bound pruning drops states that cannot catch up with the best weight so far.
# The optimum is unchanged, but far fewer states are explored.
_, pruned = pareto_front(inst)
print("states explored with bound pruning:", pruned)
