"""Experiment suites behind the ``schedred`` command line.

Each ``cmd_*`` returns a `Report` whose lines read
``check=<name> status=<pass|fail> key=value ...``.  Trials are seeded from
``(config.seed, trial index, attempt)`` so every failure can be replayed from
the values printed on its line.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from itertools import product
from pathlib import Path

from .blockint import CarryDetected, block_digits, render_blocks
from .fileio import (
    format_graph,
    format_pattern,
    format_reduction,
    parse_graph,
    parse_instance,
    parse_pattern,
    parse_reduction,
    read_text,
    sniff,
    write_text,
)
from .graphs import KPartiteGraph, PatternGraph, brute_psi, figure1, is_clique, random_nice
from .reduction import (
    FeasibilityViolation,
    ReductionOutput,
    build,
    cumulative_audit,
    structure_check,
    verify_witness,
    witness_set,
)
from .report import Report
from .schedcore import Instance, early_set_feasible
from .solvers import SOLVERS, StateBudgetExceeded, check_witness
from .variants import build_eth, build_w

DESK_LIMIT = 4


class EquivalenceViolation(AssertionError):
    def __init__(self, seed: int, detail: str = ""):
        super().__init__(f"solver and oracle disagree for graph seed {seed} {detail}".strip())
        self.seed = seed


@dataclass
class ExperimentConfig:
    suite: str = "roundtrip"
    k: int = 3
    n: tuple[int, ...] = (2,)
    m: tuple[int, ...] = (1, 2)
    trials: int = 50
    seed: int = 0
    variant: str = "p"
    pattern: PatternGraph | None = None
    alg: str = "pareto"
    budget: int = 10**7
    out: str | None = None
    workers: int = 1
    max_attempts: int = 20

    def __post_init__(self):
        self.n = tuple(self.n) if not isinstance(self.n, int) else (self.n,)
        self.m = tuple(self.m) if not isinstance(self.m, int) else (self.m,)
        if self.k > DESK_LIMIT or max(self.n) > DESK_LIMIT or max(self.m) > DESK_LIMIT:
            raise ValueError(f"round-trip sizes are capped at k, n, m <= {DESK_LIMIT}")


def trial_seed(seed: int, trial: int, attempt: int = 0) -> int:
    """Deterministic graph seed for one trial attempt."""
    return random.Random(f"{seed}:{trial}:{attempt}").randrange(2**31)


def reduce_graph(g: KPartiteGraph, variant: str = "p", pattern: PatternGraph | None = None) -> ReductionOutput:
    if pattern is not None:
        return build_eth(g, pattern, variant)
    return build(g) if variant == "p" else build_w(g)


def _pattern_for(g: KPartiteGraph, pattern: PatternGraph | None) -> PatternGraph:
    return pattern if pattern is not None else PatternGraph.complete(g.k)


def _show(value) -> str:
    return str(value) if isinstance(value, int) else render_blocks(value)


# -- reduce / solve ----------------------------------------------------------

def cmd_reduce(graph_path, variant: str = "p", pattern_path=None, out=None):
    """Reduce a graph file; returns ``(reduction, report)`` and writes ``out``."""
    g = parse_graph(read_text(graph_path))
    h = parse_pattern(read_text(pattern_path)) if pattern_path else None
    red = reduce_graph(g, variant, h)
    if out:
        write_text(out, format_reduction(red))
    rep = Report()
    inst = red.instance
    rep.add("reduce", True, variant=red.variant, jobs=len(inst),
            distinct_p=len({j.p for j in inst.jobs}), distinct_w=len({j.w for j in inst.jobs}),
            distinct_d=len({j.d for j in inst.jobs}), threshold_counting=red.threshold.counting,
            N=red.layout.N, D=red.layout.D)
    rep.extend(structure_check(red), prefix="structure.")
    return red, rep


def load_problem(path) -> tuple[Instance, ReductionOutput | None]:
    text = read_text(path)
    kind = sniff(text)
    if kind == "reduction":
        red = parse_reduction(text)
        return red.instance, red
    if kind == "instance":
        return parse_instance(text), None
    raise ValueError(f"{path} holds a {kind}, not an instance")


def solve_instance(inst: Instance, alg: str = "pareto", budget: int = 10**7):
    if alg not in SOLVERS:
        raise ValueError(f"unknown algorithm {alg!r}; choose from {sorted(SOLVERS)}")
    fn = SOLVERS[alg]
    return fn(inst, budget=budget) if fn is SOLVERS["pareto"] else fn(inst)


def cmd_solve(path, alg: str = "pareto", budget: int = 10**7) -> Report:
    """Solve an instance or reduction file.  Solver errors propagate unchanged."""
    inst, red = load_problem(path)
    t0 = time.perf_counter()
    res = solve_instance(inst, alg, budget)
    rep = Report()
    stats = {k: v for k, v in res.stats.items() if k != "seconds"}
    rep.add("solve", check_witness(inst, res), time.perf_counter() - t0, alg=alg, jobs=len(inst),
            optimum=_show(res.optimum_early_weight),
            witness=",".join(map(str, res.witness_early_set)), **stats)
    if red is not None:
        reached = res.optimum_early_weight >= red.threshold
        rep.add("threshold", True, reached="yes" if reached else "no",
                threshold=render_blocks(red.threshold),
                counting=res.optimum_early_weight.counting)
    return rep


# -- round trips ---------------------------------------------------------------

def _roundtrip_one(args):
    cfg, t = args
    ms, ns = cfg.m, cfg.n
    m, n = ms[t % len(ms)], ns[(t // len(ms)) % len(ns)]
    skipped = []
    for attempt in range(cfg.max_attempts):
        s = trial_seed(cfg.seed, t, attempt)
        g = random_nice(cfg.k, n, m, s)
        red = reduce_graph(g, cfg.variant, cfg.pattern)
        t0 = time.perf_counter()
        try:
            res = solve_instance(red.instance, cfg.alg, cfg.budget)
        except StateBudgetExceeded:
            skipped.append(s)
            continue
        oracle = brute_psi(g, _pattern_for(g, cfg.pattern)) is not None
        reached = res.optimum_early_weight >= red.threshold
        try:
            _, _, adds = cumulative_audit(red, res.witness_early_set)
            audit = True
        except (CarryDetected, FeasibilityViolation):
            adds, audit = 0, False
        return {
            "trial": t, "seed": s, "n": n, "m": m, "jobs": len(red.instance),
            "oracle": oracle, "reached": reached, "audit": audit, "additions": adds,
            "states": res.stats.get("states", 0), "skipped": skipped,
            "seconds": time.perf_counter() - t0,
        }
    return {"trial": t, "seed": None, "skipped": skipped}


def roundtrip_trials(cfg: ExperimentConfig) -> list[dict]:
    jobs = [(cfg, t) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            return list(pool.map(_roundtrip_one, jobs))
    return [_roundtrip_one(a) for a in jobs]


def cmd_roundtrip(cfg: ExperimentConfig, strict: bool = False) -> Report:
    """Solver optimum >= threshold versus the brute-force clique / PSI oracle."""
    rep = Report()
    name = cfg.variant + ("" if cfg.pattern is None else "+pattern")
    done = agree = adds = yes = 0
    skipped = 0
    for r in roundtrip_trials(cfg):
        skipped += len(r["skipped"])
        if r["seed"] is None:
            rep.add(f"roundtrip.{name}.trial{r['trial']}", False, reason="budget",
                    skipped_seeds=",".join(map(str, r["skipped"])))
            continue
        done += 1
        ok = r["oracle"] == r["reached"] and r["audit"]
        agree += ok
        yes += r["oracle"]
        adds += r["additions"]
        if not ok:
            if strict:
                raise EquivalenceViolation(r["seed"], f"(trial {r['trial']})")
            rep.add(f"roundtrip.{name}.trial{r['trial']}", False, seed=r["seed"], k=cfg.k,
                    n=r["n"], m=r["m"], oracle=r["oracle"], reached=r["reached"], audit=r["audit"])
    rep.add(f"roundtrip.{name}", done >= cfg.trials and agree == done, completed=done,
            agreeing=agree, oracle_yes=yes, regenerated=skipped, additions=adds, alg=cfg.alg, seed=cfg.seed)
    return rep


# -- lemma suites ----------------------------------------------------------------

FIGURE1_SELECTION = (1, 2, 3)


def _partial(red: ReductionOutput, early, gadgets):
    inst = red.instance
    chosen = [j for j in early if (red.roles[j].gadget, red.roles[j].pair) in gadgets
              or (red.roles[j].gadget == "vertex" and "vertex" in gadgets)]
    return inst.total("p", chosen), inst.total("w", chosen)


def golden_checks() -> Report:
    """Digit strings of the figure1 witness at three stages of the schedule."""
    rep = Report()
    red = build(figure1())
    early = witness_set(red, FIGURE1_SELECTION)
    P, W = _partial(red, early, {"vertex"})
    p_str = render_blocks(P)
    rep.add("golden.vertex_P", p_str == "444|000023|000013|000012|000021|000031|000032|0", P=p_str)
    w_vertex = "".join(map(str, block_digits(W, "vertex")))
    rep.add("golden.vertex_W_block", w_vertex == "888", W_vertex=w_vertex)
    P, W = _partial(red, early, {"vertex", ("large", (2, 3))})
    blk = "".join(map(str, block_digits(P, "large", (2, 3))))
    rep.add("golden.large23_P_block", blk == "400044", P_block=blk)
    rep.add("golden.large23_W_counting", W.counting == 2, counting=W.counting)
    gad = {"vertex", ("small", (2, 3))} | {("large", p) for p in red.layout.pairs}
    P, W = _partial(red, early, gad)
    rep.add("golden.small23_W_counting", W.counting == 12, counting=W.counting)
    return rep


def structure_suite(graphs) -> Report:
    """Structural checks for every variant on each graph; one line per build."""
    rep = Report()
    for label, g in graphs:
        builds = [("p", build(g)), ("w", build_w(g))]
        if g.k >= 3:
            builds.append(("p+path", build_eth(g, PatternGraph.path(g.k), "p")))
        for name, red in builds:
            sub = structure_check(red)
            bad = [c.name for c in sub.failures]
            distinct_p = len({j.p for j in red.instance.jobs})
            rep.add(f"structure.{label}.{name}", sub.ok, jobs=len(red.instance),
                    distinct_p=distinct_p, distinct_w=len({j.w for j in red.instance.jobs}),
                    failed=",".join(bad) or "none")
    return rep


def witness_suite(graphs, variants=("p", "w")) -> Report:
    """Every selection's witness hits its prediction; threshold iff clique."""
    rep = Report()
    total_sel = total_adds = bad = 0
    first_bad = ""
    for label, g in graphs:
        for variant in variants:
            red = reduce_graph(g, variant)
            for sel in product(*(range(1, s + 1) for s in g.class_size)):
                total_sel += 1
                try:
                    v = verify_witness(red, sel)
                except (CarryDetected, FeasibilityViolation) as exc:
                    bad += 1
                    first_bad = first_bad or f"{label}:{variant}:{sel}:{type(exc).__name__}"
                    continue
                total_adds += v["additions"]
                at = v["W"] == red.threshold
                if not (v["matches"] and at == is_clique(g, sel) and v["W"] <= red.threshold):
                    bad += 1
                    first_bad = first_bad or f"{label}:{variant}:{','.join(map(str, sel))}"
    rep.add("witness.exact", bad == 0, graphs=len(graphs), selections=total_sel,
            failures=bad, first_failure=first_bad or "none")
    rep.add("witness.nocarry", bad == 0, additions=total_adds)
    return rep


def vertex_backward(g: KPartiteGraph) -> dict:
    """Enumerate vertex-job early multisets; heavy feasible ones must be witnesses."""
    red = build(g)
    n, k = g.class_size[0], g.k
    sub_ids = red.ids(gadget="vertex")
    inst = Instance(tuple(replace(red.instance.jobs[j], id=pos) for pos, j in enumerate(sub_ids)),
                    red.layout)
    by_class = {}
    for pos, j in enumerate(sub_ids):
        r = red.roles[j]
        by_class.setdefault(r.i, {"xs": [], "x": [], "nx": []})[r.kind].append(pos)
    W_V = red.constants.W_V
    choices = [(a, b, c) for a in (0, 1) for b in range(n) for c in range(n)]
    heavy = wrong = feasible = 0
    for combo in product(choices, repeat=k):
        chosen = []
        for i, (a, b, c) in enumerate(combo, start=1):
            cl = by_class[i]
            chosen += cl["xs"][:a] + cl["x"][:b] + cl["nx"][:c]
        if not early_set_feasible(inst, chosen):
            continue
        feasible += 1
        if inst.total("w", chosen) >= W_V:
            heavy += 1
            if not all(a == 1 and b + c == n - 1 for a, b, c in combo):
                wrong += 1
    return {"multisets": len(choices) ** k, "feasible": feasible, "heavy": heavy, "wrong": wrong,
            "expected_heavy": n ** k}


def cmd_verify_lemmas(cfg: ExperimentConfig | None = None) -> Report:
    cfg = cfg or ExperimentConfig(suite="verify", trials=20)
    rep = Report()
    rep.extend(golden_checks())
    graphs = [("figure1", figure1())]
    rng = random.Random(cfg.seed)
    for t in range(cfg.trials):
        n = rng.randint(1, 3)
        m = rng.randint(1, min(3, n * n))
        s = trial_seed(cfg.seed, t)
        graphs.append((f"seed{s}", random_nice(3, n, m, s)))
    rep.extend(structure_suite(graphs[:5]))
    rep.extend(witness_suite(graphs))
    for t in range(3):
        s = trial_seed(cfg.seed, t)
        res = vertex_backward(random_nice(3, 2, 1, s))
        rep.add(f"vertex_backward.seed{s}", res["wrong"] == 0 and res["heavy"] == res["expected_heavy"],
                **res)
    return rep


# -- generators ----------------------------------------------------------------

FIXTURES = {
    "figure1": lambda: format_graph(figure1()),
    "path3": lambda: format_pattern(PatternGraph.path(3)),
    "complete3": lambda: format_pattern(PatternGraph.complete(3)),
}


def cmd_gen(k: int = 3, n: int = 2, m: int = 1, seed: int = 0, fixture: str | None = None) -> str:
    if fixture is not None:
        if fixture not in FIXTURES:
            raise ValueError(f"unknown fixture {fixture!r}; choose from {sorted(FIXTURES)}")
        return FIXTURES[fixture]()
    return format_graph(random_nice(k, n, m, seed))


def write_report(rep: Report, out: str | Path | None, with_time: bool = False) -> str:
    text = rep.format(with_time) + "\n"
    if out:
        write_text(out, text)
    return text
