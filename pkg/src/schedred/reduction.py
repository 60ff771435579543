"""Multicolored Clique -> 1||sum w_j U_j with few distinct processing times.

Given a nice k-partite graph (n vertices per class, m edges per class pair)
`build` emits three gadget families over block-structured integers:

* vertex selection jobs ``x*_i``, ``x_i``, ``nx_i`` encode a choice
  ``n_i`` per class through how many ``x_i`` versus ``nx_i`` are early;
* large edge jobs ``y``/``ny`` with fillers ``f1``/``f0`` count the edges of
  each pair that are lexicographically >= the chosen pair ``(n_i, n_j)``;
* small edge jobs ``z``/``nz`` with fillers ``g1``/``g0`` count the edges
  that are <= it.

Every pair contributes ``m + [edge (n_i, n_j) present]`` counted edges, so the
early weight reaches ``W_V + W_L + W_S + (m + 1) * B`` exactly when the choice
is a clique.  The same machinery drives the weight-swapped construction and
the pattern-restricted construction in `schedred.variants`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .blockint import (
    BlockInt,
    BlockLayout,
    CarryDetected,
    add_nocarry,
    choose_radix,
    layout_new,
    pow_digit,
    sum_nocarry,
    times,
)
from .graphs import KPartiteGraph, PatternGraph, is_nice
from .report import Report
from .schedcore import Instance, Job, early_set_feasible, evaluate, witness_to_schedule

Pair = tuple[int, int]


class NotNice(ValueError):
    pass


class BadPattern(ValueError):
    pass


class FeasibilityViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Encoding:
    """Digit placement choices for the edge gadgets.

    ``edge_shift=1`` puts the ``ell``-th edge digit of a pair at
    ``Y / N**(ell - 1)``, i.e. on the top ``m`` digits of the block, clear of
    the two filler digits.  ``edge_shift=0`` is the bare ``Y / N**ell``
    reading, which lands the last edge digit on the ``f1``/``g1`` digit.

    ``slack`` picks the small additive term at the end of every due date:
    ``"next"`` places it on the lowest digit touched by the first job of the
    following gadget, ``"block"`` always on the top digit of the next lower
    block.  The two agree for the processing-time construction.
    """

    edge_shift: int = 1
    slack: str = "next"


DEFAULT = Encoding()
LITERAL = Encoding(edge_shift=0, slack="block")

VERTEX_KINDS = ("xs", "x", "nx")
LARGE_KINDS = ("y", "ny", "f1", "f0")
SMALL_KINDS = ("z", "nz", "g1", "g0")


@dataclass(frozen=True)
class Role:
    """Gadget provenance of one job.

    ``idx`` is the edge label for y/ny/z/nz and the copy number for x/nx and
    the fillers; it is unused for ``xs``.
    """

    kind: str
    i: int
    j: int = 0
    idx: int = 0

    @property
    def pair(self) -> Pair:
        return (self.i, self.j)

    @property
    def gadget(self) -> str:
        if self.kind in VERTEX_KINDS:
            return "vertex"
        return "large" if self.kind in LARGE_KINDS else "small"

    @property
    def tag(self) -> str:
        if self.kind == "xs":
            return f"x*_{self.i}"
        if self.kind in ("x", "nx"):
            return f"{self.kind}_{self.i}#{self.idx}"
        if self.kind in ("y", "ny", "z", "nz"):
            return f"{self.kind}_{{{self.i},{self.j}}}_{self.idx}"
        return f"{self.kind}_{{{self.i},{self.j}}}#{self.idx}"


_TAG_RE = re.compile(
    r"x\*_(?P<xs>\d+)"
    r"|(?P<vk>n?x)_(?P<vi>\d+)#(?P<vc>\d+)"
    r"|(?P<ek>n?[yz])_\{(?P<ei>\d+),(?P<ej>\d+)\}_(?P<el>\d+)"
    r"|(?P<fk>[fg][01])_\{(?P<fi>\d+),(?P<fj>\d+)\}#(?P<fc>\d+)"
)


def parse_tag(tag: str) -> Role:
    mo = _TAG_RE.fullmatch(tag)
    if mo is None:
        raise ValueError(f"unrecognized job tag {tag!r}")
    if mo["xs"]:
        return Role("xs", int(mo["xs"]))
    if mo["vk"]:
        return Role(mo["vk"], int(mo["vi"]), 0, int(mo["vc"]))
    if mo["ek"]:
        return Role(mo["ek"], int(mo["ei"]), int(mo["ej"]), int(mo["el"]))
    return Role(mo["fk"], int(mo["fi"]), int(mo["fj"]), int(mo["fc"]))


@dataclass(frozen=True)
class ConstantsBundle:
    layout: BlockLayout
    n: int
    variant: str
    encoding: Encoding
    X: dict
    Y: dict
    Z: dict
    L: dict
    S: dict
    PV: dict  # P^V_i for i = 0..k
    PL: dict  # P^L_{i,j} per retained pair
    PS: dict
    P_V: BlockInt
    P_L: BlockInt
    W_V: BlockInt
    W_L: BlockInt
    W_S: BlockInt
    slack: dict  # "vertex" / ("large", pair) / ("small", pair) -> exponent

    def unit(self, c: int = 1) -> BlockInt:
        return pow_digit(self.layout, 0, c)

    def edge_exp(self, base: int, ell: int) -> int:
        """Exponent of the ``ell``-th edge digit of the block starting at ``base``."""
        m = self.layout.m
        return base + m + 1 - ell + self.encoding.edge_shift


@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance
    threshold: BlockInt
    roles: tuple[Role, ...]
    variant: str = "p"
    pattern: PatternGraph | None = None
    constants: ConstantsBundle | None = field(default=None, compare=False, repr=False)
    graph: KPartiteGraph | None = field(default=None, compare=False, repr=False)

    @property
    def layout(self) -> BlockLayout:
        return self.instance.layout

    @property
    def provenance(self) -> dict[int, str]:
        return {i: r.tag for i, r in enumerate(self.roles)}

    def ids(self, kind: str | None = None, gadget: str | None = None, pair: Pair | None = None):
        out = []
        for jid, r in enumerate(self.roles):
            if kind is not None and r.kind != kind:
                continue
            if gadget is not None and r.gadget != gadget:
                continue
            if pair is not None and (r.gadget == "vertex" or r.pair != pair):
                continue
            out.append(jid)
        return out

    def tardy_allowance(self) -> BlockInt:
        """Largest tardy weight compatible with reaching the threshold."""
        total = int(self.instance.total("w")) - int(self.threshold)
        return BlockInt.from_int(self.layout, max(total, 0))


def job_count(k: int, n: int, m: int, B: int) -> int:
    return (2 * n - 1) * k + 4 * B * (m + n)


def _term(lay: BlockLayout, e: int, c: int = 1) -> BlockInt:
    return times(pow_digit(lay, e), c)


def _sum(lay: BlockLayout, *vals: BlockInt) -> BlockInt:
    return sum_nocarry(vals, lay)


def _slack_exponents(lay: BlockLayout, variant: str, enc: Encoding) -> dict:
    """Exponent of the trailing slack term for every gadget.

    Gadgets are processed top-down: vertex, large blocks by descending pair,
    small blocks by descending pair.  Each slack sits just at or below what the
    next gadget's first job adds.
    """
    m = lay.m
    order = [("vertex", None)]
    order += [("large", p) for p in reversed(lay.pairs)]
    order += [("small", p) for p in reversed(lay.pairs)]
    bases = [lay.F(*p) for p in reversed(lay.pairs)] + [lay.G(*p) for p in reversed(lay.pairs)]
    out = {}
    for pos, key in enumerate(order):
        nxt = bases[pos] if pos < len(bases) else None
        if nxt is None:
            e = 0
        elif enc.slack == "block" or variant == "p":
            e = nxt + m + 1
        else:
            e = nxt + 1 + enc.edge_shift
        out[key[0] if key[1] is None else key] = max(e, 0)
    return out


def constants(k: int, n: int, m: int, layout: BlockLayout, variant: str = "p",
              encoding: Encoding = DEFAULT) -> ConstantsBundle:
    lay = layout
    if (lay.k, lay.m) != (k, m):
        raise ValueError("layout does not match (k, m)")
    if variant not in ("p", "w"):
        raise ValueError(f"unknown variant {variant!r}")
    t = lambda e, c=1: _term(lay, e, c)  # noqa: E731
    X = {i: t(lay.vertex_base + i) for i in range(1, k + 1)}
    Y = {p: t(lay.F(*p) + m + 1) for p in lay.pairs}
    Z = {p: t(lay.G(*p) + m + 1) for p in lay.pairs}
    L, S = {}, {}
    for i in range(1, k + 1):
        lo = [(j, i) for j in range(1, i) if lay.has_pair(j, i)]
        hi = [(i, j) for j in range(i + 1, k + 1) if lay.has_pair(i, j)]
        L[i] = _sum(lay, *(t(lay.F(*p)) for p in lo), *(t(lay.F(*p) + 1) for p in hi))
        S[i] = _sum(lay, *(t(lay.G(*p)) for p in lo), *(t(lay.G(*p) + 1) for p in hi))
    PV = {i: times(_sum(lay, *(X[j] for j in range(i + 1, k + 1))), n) for i in range(0, k + 1)}
    P_V = PV[0]
    W_V = times(_sum(lay, *X.values()), 2 * n)

    shift = encoding.edge_shift

    def edge_sum(base: int) -> BlockInt:
        return _sum(lay, *(t(base + m + 1 - ell + shift) for ell in range(1, m + 1)))

    PL, PS = {}, {}
    proc_large = {}
    proc_small = {}
    wt_large = {}
    wt_small = {}
    for p in lay.pairs:
        F, G = lay.F(*p), lay.G(*p)
        if variant == "p":
            proc_large[p] = _sum(lay, times(Y[p], m), t(F + 1, n), t(F, n))
            proc_small[p] = _sum(lay, times(Z[p], m), t(G + 1, n), t(G, n))
            wt_large[p] = _sum(lay, edge_sum(F), t(F + 1, n), t(F, n))
            wt_small[p] = _sum(lay, edge_sum(G), t(G + 1, n), t(G, n))
        else:
            proc_large[p] = _sum(lay, edge_sum(F), t(F + 1, n), t(F, n))
            proc_small[p] = _sum(lay, edge_sum(G), t(G + 1, n), t(G, n))
            wt_large[p] = _sum(lay, times(Y[p], m), t(F + 1, n), t(F, n))
            wt_small[p] = _sum(lay, times(Z[p], m), t(G + 1, n), t(G, n))
    for p in lay.pairs:
        PL[p] = _sum(lay, *(proc_large[q] for q in lay.pairs if q > p))
        PS[p] = _sum(lay, *(proc_small[q] for q in lay.pairs if q > p))
    P_L = _sum(lay, *proc_large.values())
    W_L = _sum(lay, *wt_large.values())
    W_S = _sum(lay, *wt_small.values())
    return ConstantsBundle(
        lay, n, variant, encoding, X, Y, Z, L, S, PV, PL, PS, P_V, P_L, W_V, W_L, W_S,
        _slack_exponents(lay, variant, encoding),
    )


def _construct(g: KPartiteGraph, pairs: Sequence[Pair], variant: str,
               pattern: PatternGraph | None, encoding: Encoding) -> ReductionOutput:
    if not is_nice(g):
        raise NotNice("the reduction needs equal class sizes and equal pair edge counts")
    k, n = g.k, g.class_size[0]
    m = len(g.pair_edges(1, 2)) if k >= 2 else 0
    if m < 1:
        raise NotNice("every class pair needs at least one edge")
    pairs = tuple(sorted(pairs))
    J = job_count(k, n, m, len(pairs))
    lay = layout_new(k, m, pairs, choose_radix(k, n, m, J))
    C = constants(k, n, m, lay, variant, encoding)
    t = lambda e, c=1: _term(lay, e, c)  # noqa: E731

    jobs: list[tuple[Role, BlockInt, BlockInt, BlockInt]] = []

    for i in range(1, k + 1):
        d = _sum(lay, C.PV[i - 1], t(C.slack["vertex"]))
        px = _sum(lay, C.X[i], C.L[i])
        pnx = _sum(lay, C.X[i], C.S[i])
        jobs.append((Role("xs", i), px, _sum(lay, times(C.X[i], n + 1), C.L[i]), d))
        for c in range(1, n):
            jobs.append((Role("x", i, 0, c), px, px, d))
        for c in range(1, n):
            jobs.append((Role("nx", i, 0, c), pnx, pnx, d))

    def edge_gadget(p: Pair, small: bool):
        i, j = p
        base = lay.G(*p) if small else lay.F(*p)
        top = C.Z[p] if small else C.Y[p]
        start = _sum(lay, C.P_V, C.P_L, C.PS[p]) if small else _sum(lay, C.P_V, C.PL[p])
        slack = t(C.slack[("small" if small else "large", p)])
        kinds = ("z", "nz", "g1", "g0") if small else ("y", "ny", "f1", "f0")
        edge = {ell: t(C.edge_exp(base, ell)) for ell in range(1, m + 1)}

        def prefix(ell: int) -> BlockInt:
            if variant == "p":
                return times(top, ell)
            return _sum(lay, *(edge[e] for e in range(ell, m + 1)))

        full = prefix(m) if variant == "p" else prefix(1)
        for ell, (li, lj) in enumerate(g.pair_edges(i, j), start=1):
            hi_i, hi_j = (n - li, n - lj) if small else (li, lj)
            d_yes = _sum(lay, start, prefix(ell), t(base + 1, hi_i), t(base, hi_j), slack)
            d_no = _sum(lay, start, prefix(ell), t(base + 1, n), t(base, n), slack)
            if variant == "p":
                pe, w_yes, w_no = top, add_nocarry(edge[ell], C.unit()), edge[ell]
            else:
                pe, w_yes, w_no = edge[ell], add_nocarry(top, C.unit()), top
            jobs.append((Role(kinds[0], i, j, ell), pe, w_yes, d_yes))
            jobs.append((Role(kinds[1], i, j, ell), pe, w_no, d_no))
        d_fill = _sum(lay, start, full, t(base + 1, n), t(base, n), slack)
        for c in range(1, n + 1):
            v = t(base + 1)
            jobs.append((Role(kinds[2], i, j, c), v, v, d_fill))
        for c in range(1, n + 1):
            v = t(base)
            jobs.append((Role(kinds[3], i, j, c), v, v, d_fill))

    for p in pairs:
        edge_gadget(p, small=False)
    for p in pairs:
        edge_gadget(p, small=True)

    roles = tuple(r for r, *_ in jobs)
    inst = Instance(
        tuple(Job(jid, pp, ww, dd, r.tag) for jid, (r, pp, ww, dd) in enumerate(jobs)), lay
    )
    threshold = _sum(lay, C.W_V, C.W_L, C.W_S, C.unit((m + 1) * len(pairs)))
    return ReductionOutput(inst, threshold, roles, variant, pattern, C, g)


def build(g: KPartiteGraph, encoding: Encoding = DEFAULT) -> ReductionOutput:
    """Reduction with ``2k + 6 * C(k, 2)`` distinct processing times."""
    if g.k < 2:
        raise NotNice("need at least two classes")
    return _construct(g, tuple((i, j) for i in range(1, g.k + 1) for j in range(i + 1, g.k + 1)),
                      "p", None, encoding)


def _lex_ge(a: Pair, b: Pair) -> bool:
    return a >= b


def count_ge(g: KPartiteGraph, i: int, j: int, n_i: int, n_j: int) -> int:
    """Edges of E_{i,j} lexicographically >= (n_i, n_j)."""
    return sum(1 for e in g.pair_edges(i, j) if _lex_ge(e, (n_i, n_j)))


def count_le(g: KPartiteGraph, i: int, j: int, n_i: int, n_j: int) -> int:
    """Edges of E_{i,j} lexicographically <= (n_i, n_j)."""
    return sum(1 for e in g.pair_edges(i, j) if _lex_ge((n_i, n_j), e))


def witness_set(red: ReductionOutput, selection: Sequence[int]) -> list[int]:
    """Early jobs of the constructive schedule for ``selection`` (1-based indices)."""
    g = red.graph
    if g is None:
        raise ValueError("witness construction needs the source graph")
    n = g.class_size[0]
    sel = tuple(selection)
    if len(sel) != g.k or not all(1 <= s <= n for s in sel):
        raise ValueError(f"selection {sel} invalid for k={g.k}, n={n}")
    early = []
    for jid, r in enumerate(red.roles):
        k = r.kind
        if k == "xs":
            keep = True
        elif k == "x":
            keep = r.idx <= sel[r.i - 1] - 1
        elif k == "nx":
            keep = r.idx <= n - sel[r.i - 1]
        else:
            ni, nj = sel[r.i - 1], sel[r.j - 1]
            if k in ("y", "ny", "z", "nz"):
                e = g.pair_edges(r.i, r.j)[r.idx - 1]
                hit = _lex_ge(e, (ni, nj)) if k in ("y", "ny") else _lex_ge((ni, nj), e)
                keep = hit if k in ("y", "z") else not hit
            elif k == "f1":
                keep = r.idx <= n - ni
            elif k == "f0":
                keep = r.idx <= n - nj
            elif k == "g1":
                keep = r.idx <= ni
            else:
                keep = r.idx <= nj
        if keep:
            early.append(jid)
    return early


def predicted_weight(red: ReductionOutput, selection: Sequence[int]) -> BlockInt:
    C, g = red.constants, red.graph
    counted = 0
    for i, j in red.layout.pairs:
        ni, nj = selection[i - 1], selection[j - 1]
        counted += count_ge(g, i, j, ni, nj) + count_le(g, i, j, ni, nj)
    return _sum(red.layout, C.W_V, C.W_L, C.W_S, C.unit(counted))


def witness(red: ReductionOutput, selection: Sequence[int]):
    """Constructive early set for ``selection`` and its predicted early weight."""
    early = witness_set(red, selection)
    if not early_set_feasible(red.instance, early):
        raise FeasibilityViolation(f"witness for {tuple(selection)} misses a due date")
    return early, predicted_weight(red, selection)


def cumulative_audit(red: ReductionOutput, early: Sequence[int]):
    """Carry-free running sums of p and w over ``early`` in due-date order.

    Returns ``(P, W, additions)``; raises `CarryDetected` or
    `FeasibilityViolation` on the first offending job.
    """
    inst, lay = red.instance, red.layout
    P = W = lay.zero()
    adds = 0
    for jid in sorted(early, key=lambda x: (inst.jobs[x].d, x)):
        job = inst.jobs[jid]
        P = add_nocarry(P, job.p)
        W = add_nocarry(W, job.w)
        adds += 2
        if P > job.d:
            raise FeasibilityViolation(f"job {job.tag} completes after its due date")
    return P, W, adds


def verify_witness(red: ReductionOutput, selection: Sequence[int]) -> dict:
    """Evaluate the witness schedule and compare against the prediction."""
    early, predicted = witness(red, selection)
    P, W, adds = cumulative_audit(red, early)
    res = evaluate(red.instance, witness_to_schedule(red.instance, early))
    return {
        "early": early,
        "exact_early_set": res.early_ids == tuple(sorted(early)),
        "W": res.W_early,
        "P": res.P_early,
        "predicted": predicted,
        "matches": res.W_early == predicted == W and res.P_early == P,
        "additions": adds,
    }


def _vertex_distinct(C: ConstantsBundle, k: int, n: int):
    """Distinct processing times / weights among vertex jobs."""
    p = w = 0
    for i in range(1, k + 1):
        if n == 1:
            p += 1
            w += 1
        else:
            same = C.L[i] == C.S[i]
            p += 1 if same else 2
            w += 2 if same else 3
    return p, w


def expected_counts(red: ReductionOutput) -> dict:
    """Distinct-value counts the construction is designed to have."""
    C, lay = red.constants, red.layout
    k, m, B = lay.k, lay.m, lay.B
    n = C.n
    vp, vw = _vertex_distinct(C, k, n)
    out = {"jobs": job_count(k, n, m, B), "vertex_p": vp}
    if red.variant == "p":
        out["distinct_p"] = vp + 6 * B
    else:
        per_side = m + 2 if C.encoding.edge_shift else m + 1
        out["distinct_p"] = vp + 2 * B * per_side
        out["distinct_w"] = vw + 8 * B
    return out


def structure_check(red: ReductionOutput) -> Report:
    rep = Report()
    inst, lay, C = red.instance, red.layout, red.constants
    k, m, B = lay.k, lay.m, lay.B
    exp = expected_counts(red)
    distinct_p = len({j.p for j in inst.jobs})
    distinct_w = len({j.w for j in inst.jobs})
    distinct_d = len({j.d for j in inst.jobs})
    rep.add("job_count", len(inst) == exp["jobs"], measured=len(inst), expected=exp["jobs"])
    rep.add("distinct_p", distinct_p == exp["distinct_p"], measured=distinct_p,
            expected=exp["distinct_p"])
    if "distinct_w" in exp:
        rep.add("distinct_w", distinct_w == exp["distinct_w"], measured=distinct_w,
                expected=exp["distinct_w"])
    else:
        rep.add("distinct_w", True, measured=distinct_w, expected="unbounded")
    rep.add("distinct_d", True, measured=distinct_d)
    if lay.B == comb(k, 2) and red.variant == "p":
        rep.add("distinct_p_formula", distinct_p == 2 * k + 6 * B or C.n == 1,
                measured=distinct_p, formula=2 * k + 6 * B)

    groups = []
    for i in range(k, 0, -1):
        groups.append([jid for jid, r in enumerate(red.roles) if r.gadget == "vertex" and r.i == i])
    for p in reversed(lay.pairs):
        groups.append(red.ids(gadget="large", pair=p))
    for p in reversed(lay.pairs):
        groups.append(red.ids(gadget="small", pair=p))
    groups = [gr for gr in groups if gr]
    ordered = True
    for a, b in zip(groups, groups[1:]):
        if max(inst.jobs[x].d for x in a) >= min(inst.jobs[x].d for x in b):
            ordered = False
    rep.add("due_date_groups", ordered, groups=len(groups))

    try:
        for attr in ("p", "w", "d"):
            vals = sorted({getattr(j, attr) for j in inst.jobs})
            for x in range(len(vals)):
                for y in range(x, len(vals)):
                    add_nocarry(vals[x], vals[y])
        sum_nocarry((j.p for j in inst.jobs), lay)
        sum_nocarry((j.w for j in inst.jobs), lay)
        carry_free = True
        where = ""
    except CarryDetected as exc:
        carry_free = False
        where = exc.position
    rep.add("nocarry_sums", carry_free, position=where)
    rep.add("threshold_counting", red.threshold.counting == (m + 1) * B,
            measured=red.threshold.counting, expected=(m + 1) * B)
    return rep
