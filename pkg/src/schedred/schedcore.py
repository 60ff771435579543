"""Jobs, instances and schedule evaluation for 1||sum w_j U_j.

Values are anything ordered and additive with an exact zero: plain ``int``
for the word realization, `BlockInt` for reduction instances.  A job is early
when its completion time is at most its due date.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .blockint import BlockLayout

Value = Any
Schedule = tuple[int, ...]


class NotAPermutation(ValueError):
    pass


class InfeasibleEarlySet(ValueError):
    pass


@dataclass(frozen=True)
class Job:
    id: int
    p: Value
    w: Value
    d: Value
    tag: str = ""


@dataclass(frozen=True)
class Instance:
    jobs: tuple[Job, ...]
    layout: BlockLayout | None = None

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        for pos, job in enumerate(self.jobs):
            if job.id != pos:
                raise ValueError(f"job ids must be dense 0..n-1, got {job.id} at {pos}")

    @classmethod
    def from_tuples(cls, triples: Iterable[Sequence[int]]) -> "Instance":
        """Word instance from ``(p, w, d)`` triples."""
        return cls(tuple(Job(i, p, w, d) for i, (p, w, d) in enumerate(triples)))

    @property
    def numeric(self) -> str:
        return "word" if self.layout is None else "block"

    def zero(self) -> Value:
        return 0 if self.layout is None else self.layout.zero()

    def __len__(self):
        return len(self.jobs)

    def total(self, attr: str, ids: Iterable[int] | None = None) -> Value:
        acc = self.zero()
        for i in range(len(self.jobs)) if ids is None else ids:
            acc = acc + getattr(self.jobs[i], attr)
        return acc


@dataclass(frozen=True)
class EvalResult:
    completion: tuple[Value, ...]
    early: tuple[bool, ...]
    P_early: Value
    W_early: Value
    W_tardy: Value

    @property
    def early_ids(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.early) if e)


def _check_perm(n: int, order: Sequence[int]):
    if sorted(order) != list(range(n)):
        raise NotAPermutation(f"schedule is not a permutation of 0..{n - 1}")


def evaluate(instance: Instance, schedule: Sequence[int]) -> EvalResult:
    jobs = instance.jobs
    _check_perm(len(jobs), schedule)
    zero = instance.zero()
    t = zero
    completion: list[Value] = [zero] * len(jobs)
    early = [False] * len(jobs)
    P = W = Wt = zero
    for i in schedule:
        job = jobs[i]
        t = t + job.p
        completion[i] = t
        if t <= job.d:
            early[i] = True
            P = P + job.p
            W = W + job.w
        else:
            Wt = Wt + job.w
    return EvalResult(tuple(completion), tuple(early), P, W, Wt)


def edd_order(instance: Instance) -> Schedule:
    # sorted() is stable, so equal due dates keep input order.
    return tuple(sorted(range(len(instance.jobs)), key=lambda i: instance.jobs[i].d))


def is_edd(instance: Instance, schedule: Sequence[int], early_flags: Sequence[bool]) -> bool:
    """Early jobs first, and in non-decreasing due-date order.

    ``early_flags`` is indexed by job id.
    """
    if len(early_flags) != len(instance.jobs) or len(schedule) != len(instance.jobs):
        raise ValueError("schedule, flags and instance sizes differ")
    seen_tardy = False
    last_d = None
    for i in schedule:
        if not early_flags[i]:
            seen_tardy = True
            continue
        if seen_tardy:
            return False
        d = instance.jobs[i].d
        if last_d is not None and d < last_d:
            return False
        last_d = d
    return True


def _edd_sorted(instance: Instance, subset: Iterable[int]) -> list[int]:
    return sorted(subset, key=lambda i: (instance.jobs[i].d, i))


def early_set_feasible(instance: Instance, subset: Iterable[int]) -> bool:
    """Can exactly ``subset`` be scheduled so that all of it is early?"""
    t = instance.zero()
    for i in _edd_sorted(instance, subset):
        job = instance.jobs[i]
        t = t + job.p
        if t > job.d:
            return False
    return True


def witness_to_schedule(instance: Instance, subset: Iterable[int]) -> Schedule:
    subset = set(subset)
    if not early_set_feasible(instance, subset):
        raise InfeasibleEarlySet("the requested early set cannot be scheduled on time")
    head = _edd_sorted(instance, subset)
    tail = [i for i in range(len(instance.jobs)) if i not in subset]
    return tuple(head + tail)
