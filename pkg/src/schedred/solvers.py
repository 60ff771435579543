"""Exact solvers for maximizing early weight (equivalently minimizing tardy weight).

All four solvers return a `SolveResult` whose witness is an early set that
`early_set_feasible` accepts.  Values are converted to Python ints internally;
the integer image of a carry-free `BlockInt` respects both ``+`` and ``<``, so
this is exact for either realization.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from .schedcore import Instance, Value, early_set_feasible, edd_order


class TooLarge(ValueError):
    pass


class StateBudgetExceeded(RuntimeError):
    def __init__(self, limit: int):
        super().__init__(f"Pareto front exceeded the state budget of {limit}")
        self.limit = limit


class HorizonTooLarge(ValueError):
    pass


@dataclass
class SolveResult:
    optimum_early_weight: Value
    witness_early_set: tuple[int, ...]
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ParetoFront:
    """Nondominated ``(P_early, W_early)`` states, both strictly increasing."""

    P: tuple[int, ...]
    W: tuple[int, ...]
    back: tuple = ()

    def __len__(self):
        return len(self.P)


def _ints(instance: Instance):
    p = [int(j.p) for j in instance.jobs]
    w = [int(j.w) for j in instance.jobs]
    d = [int(j.d) for j in instance.jobs]
    return p, w, d


def _result(instance: Instance, ids, **stats) -> SolveResult:
    ids = tuple(sorted(ids))
    return SolveResult(instance.total("w", ids), ids, stats)


def _array(values, *limits):
    # int64 when everything that can be summed fits, exact Python ints otherwise.
    big = max([abs(v) for v in values] + [0]) * max(len(values), 1)
    if big < 2**62 and all(abs(x) < 2**62 for x in limits):
        return np.asarray(values, dtype=np.int64)
    return np.asarray(values, dtype=object)


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)


def solve_perm_bruteforce(instance: Instance, max_jobs: int = 9) -> SolveResult:
    """Evaluate every processing order; ground truth for tiny instances."""
    n = len(instance)
    if n > max_jobs:
        raise TooLarge(f"{n} jobs exceeds the permutation limit {max_jobs}")
    t0 = time.perf_counter()
    if n == 0:
        return _result(instance, (), states=1, seconds=0.0)
    p, w, d = _ints(instance)
    P = _array(p, *d)
    Wv = _array(w)
    Dv = _array(d, *p)
    perms = _perm_table(n)
    completion = np.cumsum(P[perms], axis=1)
    on_time = completion <= Dv[perms]
    gained = np.where(on_time, Wv[perms], 0).sum(axis=1)
    best = int(np.argmax(gained))
    ids = perms[best][on_time[best]].tolist()
    return _result(instance, ids, states=len(perms), seconds=time.perf_counter() - t0)


def solve_subset_bruteforce(instance: Instance, max_jobs: int = 22) -> SolveResult:
    """Enumerate every subset and keep the heaviest one that is EDD-feasible."""
    n = len(instance)
    if n > max_jobs:
        raise TooLarge(f"{n} jobs exceeds the subset limit {max_jobs}")
    t0 = time.perf_counter()
    p, w, d = _ints(instance)
    order = list(edd_order(instance))
    masks = np.arange(1 << n, dtype=np.int64)
    dtype = _array(p + w, *d).dtype
    t = np.zeros(1 << n, dtype=dtype)
    W = np.zeros(1 << n, dtype=dtype)
    ok = np.ones(1 << n, dtype=bool)
    for j in order:
        take = ((masks >> j) & 1).astype(bool)
        t = t + np.where(take, p[j], 0)
        W = W + np.where(take, w[j], 0)
        ok &= ~take | (t <= d[j])
    scores = np.where(ok, W, -1)
    best = int(np.argmax(scores))
    ids = [j for j in range(n) if (best >> j) & 1]
    return _result(instance, ids, states=1 << n, seconds=time.perf_counter() - t0)


def _runs(order, p, w, d, compress: bool):
    """Consecutive EDD-order batches; identical (p, w, d) jobs share one batch."""
    runs: list[list[int]] = []
    for j in order:
        if compress and runs and (p[runs[-1][0]], w[runs[-1][0]], d[runs[-1][0]]) == (p[j], w[j], d[j]):
            runs[-1].append(j)
        else:
            runs.append([j])
    return runs


def pareto_front(instance: Instance, budget: int = 10**7, bound: bool = True,
                 compress: bool = False):
    """Run the EDD dynamic program; returns the final front and explored count.

    With ``bound`` a state is also dropped when its weight plus the weight of
    every job not yet processed stays below the best weight already reached
    by some state; the optimum is unaffected but the front is then partial.
    With ``compress`` runs of identical jobs are branched on as one batch
    ("take the first t copies early"), which skips symmetric duplicates.
    """
    p, w, d = _ints(instance)
    runs = _runs(edd_order(instance), p, w, d, compress)
    rest = [0] * (len(runs) + 1)
    for pos in range(len(runs) - 1, -1, -1):
        rest[pos] = rest[pos + 1] + sum(w[j] for j in runs[pos])
    # back[s] is a linked list (job ids, parent) of early jobs for state s
    P, W, back = [0], [0], [None]
    explored = 1
    for pos, run in enumerate(runs):
        j = run[0]
        pj, wj, dj = p[j], w[j], d[j]
        cand = []
        for t in range(1, len(run) + 1):
            ids = tuple(run[:t])
            for s in range(len(P)):
                if P[s] + t * pj > dj:
                    break  # P is increasing
                cand.append((P[s] + t * pj, W[s] + t * wj, (ids, back[s])))
        if not cand:
            continue
        explored += len(cand)
        if explored > budget:
            raise StateBudgetExceeded(budget)
        merged = sorted(
            list(zip(P, W, back)) + cand, key=lambda st: (st[0], -st[1])
        )
        floor = max(W[-1], max(c[1] for c in cand)) - rest[pos + 1] if bound else None
        P, W, back = [], [], []
        for st in merged:
            if W and st[1] <= W[-1]:
                continue
            if floor is not None and st[1] < floor:
                continue
            P.append(st[0])
            W.append(st[1])
            back.append(st[2])
    return ParetoFront(tuple(P), tuple(W), tuple(back)), explored


def solve_pareto(instance: Instance, budget: int = 10**7, bound: bool = True,
                 compress: bool = False) -> SolveResult:
    """Exact DP over nondominated (processing time, weight) states in EDD order."""
    t0 = time.perf_counter()
    front, explored = pareto_front(instance, budget, bound, compress)
    ids = []
    node = front.back[-1]
    while node is not None:
        ids.extend(node[0])
        node = node[1]
    return _result(
        instance, ids, states=explored, front=len(front), seconds=time.perf_counter() - t0
    )


def solve_lawler_moore(instance: Instance, max_horizon: int = 10**6) -> SolveResult:
    """Classic pseudo-polynomial DP over the time horizon, jobs in EDD order.

    ``best[t]`` is the largest early weight whose early jobs use exactly ``t``
    units of processing time (-1 when unreachable).
    """
    t0 = time.perf_counter()
    p, w, d = _ints(instance)
    horizon = min(sum(p), max(d, default=0))
    if sum(p) > max_horizon:
        raise HorizonTooLarge(f"total processing time {sum(p)} exceeds {max_horizon}")
    horizon = max(horizon, 0)
    dtype = np.int64 if sum(w) < 2**62 else object
    best = np.full(horizon + 1, -1, dtype=dtype)
    best[0] = 0
    took = []
    order = edd_order(instance)
    for j in order:
        hi = min(d[j], horizon)
        mark = np.zeros(horizon + 1, dtype=bool)
        if p[j] <= hi:
            src = best[: hi - p[j] + 1]
            cand = np.where(src >= 0, src + w[j], -1)
            dst = best[p[j]: hi + 1]
            better = cand > dst
            mark[p[j]: hi + 1] = better
            best[p[j]: hi + 1] = np.where(better, cand, dst)
        took.append(mark)
    t = int(np.argmax(best))
    ids = []
    for j, mark in zip(reversed(order), reversed(took)):
        if mark[t]:
            ids.append(j)
            t -= p[j]
    return _result(instance, ids, states=(horizon + 1) * len(order), seconds=time.perf_counter() - t0)


SOLVERS = {
    "perm": solve_perm_bruteforce,
    "subset": solve_subset_bruteforce,
    "pareto": solve_pareto,
    "lm": solve_lawler_moore,
    "lawler-moore": solve_lawler_moore,
}


def check_witness(instance: Instance, result: SolveResult) -> bool:
    return early_set_feasible(instance, result.witness_early_set) and (
        instance.total("w", result.witness_early_set) == result.optimum_early_weight
    )
