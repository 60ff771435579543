import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from schedred.blockint import BlockInt, layout_new
from schedred.schedcore import (
    InfeasibleEarlySet,
    Instance,
    Job,
    NotAPermutation,
    early_set_feasible,
    edd_order,
    evaluate,
    is_edd,
    witness_to_schedule,
)

triples = st.lists(st.tuples(st.integers(1, 9), st.integers(0, 9), st.integers(0, 30)), min_size=1, max_size=7)


def test_evaluate_small_example():
    inst = Instance.from_tuples([(2, 3, 2), (2, 2, 3)])
    r = evaluate(inst, (0, 1))
    assert r.completion == (2, 4)
    assert r.early == (True, False)
    assert (r.P_early, r.W_early, r.W_tardy) == (2, 3, 2)
    assert r.early_ids == (0,)


def test_evaluate_rejects_non_permutations():
    inst = Instance.from_tuples([(1, 1, 1), (1, 1, 1)])
    with pytest.raises(NotAPermutation):
        evaluate(inst, (0, 0))
    with pytest.raises(NotAPermutation):
        evaluate(inst, (0,))


def test_early_means_completion_at_most_due_date():
    inst = Instance.from_tuples([(3, 1, 3)])
    assert evaluate(inst, (0,)).early == (True,)
    inst = Instance.from_tuples([(3, 1, 2)])
    assert evaluate(inst, (0,)).early == (False,)


@given(triples)
def test_early_plus_tardy_is_total(ts):
    inst = Instance.from_tuples(ts)
    r = evaluate(inst, tuple(range(len(ts))))
    assert r.W_early + r.W_tardy == inst.total("w")


def test_edd_order_is_stable():
    inst = Instance.from_tuples([(1, 1, 5), (1, 1, 3), (1, 1, 5), (1, 1, 3)])
    assert edd_order(inst) == (1, 3, 0, 2)


def test_is_edd():
    inst = Instance.from_tuples([(1, 1, 5), (1, 1, 3), (1, 1, 4)])
    flags = [True, True, False]
    assert is_edd(inst, (1, 0, 2), flags)
    assert not is_edd(inst, (0, 1, 2), flags)
    assert not is_edd(inst, (1, 2, 0), flags)


def test_early_set_feasible_examples():
    inst = Instance.from_tuples([(2, 1, 2), (2, 1, 3)])
    assert early_set_feasible(inst, [0])
    assert early_set_feasible(inst, [1])
    assert not early_set_feasible(inst, [0, 1])
    assert early_set_feasible(inst, [])


@given(triples, st.data())
def test_feasible_iff_some_order_makes_subset_early(ts, data):
    inst = Instance.from_tuples(ts)
    subset = data.draw(st.sets(st.integers(0, len(ts) - 1)))
    by_perm = any(
        all(evaluate(inst, perm).early[i] for i in subset)
        for perm in permutations(range(len(ts)))
    ) if len(ts) <= 6 else None
    if by_perm is not None:
        assert early_set_feasible(inst, subset) == by_perm


@given(triples)
def test_equal_due_date_ties_do_not_change_feasibility(ts):
    # reversing the job list reorders ties; the verdict for the mirrored set must agree
    inst = Instance.from_tuples(ts)
    rev = Instance.from_tuples(list(reversed(ts)))
    n = len(ts)
    rng = random.Random(len(ts))
    for _ in range(5):
        subset = {i for i in range(n) if rng.random() < 0.5}
        assert early_set_feasible(inst, subset) == early_set_feasible(rev, {n - 1 - i for i in subset})


def test_witness_to_schedule_puts_subset_first_in_edd():
    inst = Instance.from_tuples([(1, 1, 9), (1, 1, 2), (5, 1, 1)])
    sched = witness_to_schedule(inst, {0, 1})
    assert sched == (1, 0, 2)
    r = evaluate(inst, sched)
    assert set(r.early_ids) >= {0, 1}
    with pytest.raises(InfeasibleEarlySet):
        witness_to_schedule(inst, {2})


def test_dense_ids_required():
    with pytest.raises(ValueError):
        Instance((Job(1, 1, 1, 1),))


def test_block_realization():
    lay = layout_new(2, 1, N=10)
    v = lambda x: BlockInt.from_int(lay, x)  # noqa: E731
    inst = Instance((Job(0, v(3), v(5), v(3)), Job(1, v(4), v(4), v(6))), lay)
    assert inst.numeric == "block"
    r = evaluate(inst, (0, 1))
    assert r.early == (True, False)
    assert int(r.W_early) == 5 and int(r.W_tardy) == 4
    assert early_set_feasible(inst, [1]) and not early_set_feasible(inst, [0, 1])
