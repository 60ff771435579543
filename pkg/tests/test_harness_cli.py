from pathlib import Path

import pytest

from schedred import harness
from schedred.cli import main
from schedred.fileio import format_graph, format_instance, parse_reduction
from schedred.graphs import PatternGraph, random_nice
from schedred.harness import (
    EquivalenceViolation,
    ExperimentConfig,
    cmd_reduce,
    cmd_roundtrip,
    cmd_solve,
    golden_checks,
    trial_seed,
    vertex_backward,
)
from schedred.schedcore import Instance
from schedred.solvers import StateBudgetExceeded

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("variant,pattern,name,key,value", [
    ("p", None, "p", "distinct_p", 24),
    ("w", None, "w", "distinct_w", 33),
])
def test_cmd_reduce_figure1(tmp_path, variant, pattern, name, key, value):
    out = tmp_path / "r.txt"
    red, rep = cmd_reduce(GOLDEN / "figure1.graph", variant, pattern, out)
    assert rep.ok
    assert rep["reduce"].measured["jobs"] == 117
    assert rep["reduce"].measured[key] == value
    assert rep.format() + "\n" == (GOLDEN / f"reduce_figure1_{name}.txt").read_text()
    assert parse_reduction(out.read_text()) == red


def test_cmd_reduce_path_pattern_report_is_stable(tmp_path):
    _, rep = cmd_reduce(GOLDEN / "figure1.graph", "p", GOLDEN / "path3.pattern", tmp_path / "r.txt")
    assert rep.format() + "\n" == (GOLDEN / "reduce_figure1_path3.txt").read_text()


def test_golden_strings_file():
    assert golden_checks().format() + "\n" == (GOLDEN / "golden_strings.txt").read_text()


def test_cmd_solve_word_instance_all_algorithms(tmp_path):
    path = tmp_path / "i.txt"
    path.write_text(format_instance(Instance.from_tuples([(2, 3, 2), (2, 2, 3), (1, 4, 5)])))
    optima = set()
    for alg in ("perm", "subset", "pareto", "lawler-moore", "lm"):
        rep = cmd_solve(path, alg)
        assert rep.ok
        optima.add(rep["solve"].measured["optimum"])
    assert optima == {"7"}


def test_cmd_solve_reduction_reaches_threshold(tmp_path):
    g = None
    for seed in range(50):
        g = random_nice(3, 2, 1, seed)
        if harness.brute_psi(g, PatternGraph.complete(3)):
            break
    path = tmp_path / "r.txt"
    gpath = tmp_path / "g.txt"
    gpath.write_text(format_graph(g))
    cmd_reduce(gpath, "p", None, path)
    rep = cmd_solve(path, "pareto")
    assert rep["threshold"].measured["reached"] == "yes"
    assert rep["threshold"].measured["counting"] == 2 * 3


def test_cmd_solve_budget_error_propagates():
    with pytest.raises(StateBudgetExceeded):
        cmd_solve(GOLDEN / "figure1_p.reduction", "pareto", budget=1)


def test_roundtrip_is_deterministic():
    cfg = ExperimentConfig(trials=6, seed=3)
    a = cmd_roundtrip(cfg).format()
    b = cmd_roundtrip(cfg).format()
    assert a == b
    assert "status=pass" in a


def test_roundtrip_parallel_matches_serial():
    cfg = ExperimentConfig(trials=6, seed=8, variant="w")
    serial = cmd_roundtrip(cfg).format()
    cfg.workers = 2
    assert cmd_roundtrip(cfg).format() == serial


def test_roundtrip_regenerates_over_budget_seeds():
    # 45-job solves explore 209..212 states, so a budget of 210 rejects some seeds
    cfg = ExperimentConfig(trials=4, seed=1, n=(2,), m=(1,), budget=210, max_attempts=5)
    rep = cmd_roundtrip(cfg)
    line = rep["roundtrip.p"]
    assert line.passed
    assert line.measured["completed"] == 4
    assert line.measured["regenerated"] > 0
    assert rep.format() == cmd_roundtrip(cfg).format()


def test_roundtrip_reports_exhausted_trials():
    cfg = ExperimentConfig(trials=2, seed=1, n=(2,), m=(1,), budget=100, max_attempts=2)
    rep = cmd_roundtrip(cfg)
    assert not rep.ok
    assert rep["roundtrip.p.trial0"].measured["reason"] == "budget"
    seeds = rep["roundtrip.p.trial0"].measured["skipped_seeds"].split(",")
    assert seeds == [str(trial_seed(1, 0, a)) for a in range(2)]


def test_strict_roundtrip_raises_on_disagreement(monkeypatch):
    real = harness.reduce_graph

    def broken(g, variant="p", pattern=None):
        red = real(g, variant, pattern)
        # an unreachable threshold makes every yes-instance disagree
        from dataclasses import replace
        from schedred.blockint import BlockInt

        return replace(red, threshold=BlockInt.from_int(red.layout, int(red.instance.total("w")) + 1))

    monkeypatch.setattr(harness, "reduce_graph", broken)
    cfg = ExperimentConfig(trials=10, seed=0)
    with pytest.raises(EquivalenceViolation) as exc:
        cmd_roundtrip(cfg, strict=True)
    assert exc.value.seed in {trial_seed(0, t) for t in range(10)}
    rep = cmd_roundtrip(cfg)
    assert not rep.ok
    bad = rep.failures[0]
    assert bad.measured["oracle"] is True and bad.measured["reached"] is False
    # the recorded seed replays the same graph
    g = random_nice(3, bad.measured["n"], bad.measured["m"], bad.measured["seed"])
    assert harness.brute_psi(g, PatternGraph.complete(3)) is not None


def test_config_guards():
    with pytest.raises(ValueError):
        ExperimentConfig(k=5)


def test_vertex_backward_counts():
    res = vertex_backward(random_nice(3, 2, 1, 0))
    assert res["wrong"] == 0 and res["heavy"] == 8


# -- CLI -----------------------------------------------------------------------

def test_cli_gen_reduce_solve(tmp_path, capsys):
    g = tmp_path / "g.txt"
    r = tmp_path / "r.txt"
    assert main(["gen", "--k", "3", "--n", "2", "--m", "1", "--seed", "4", "--out", str(g)]) == 0
    assert g.read_text().startswith("graph k=3 sizes=2,2,2")
    assert main(["reduce", "--in", str(g), "--out", str(r)]) == 0
    assert "jobs=45" in capsys.readouterr().out
    assert main(["solve", "--in", str(r), "--alg", "pareto"]) == 0
    assert "check=threshold" in capsys.readouterr().out


def test_cli_fixture_matches_golden(capsys):
    assert main(["gen", "--fixture", "figure1"]) == 0
    assert capsys.readouterr().out == (GOLDEN / "figure1.graph").read_text()


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["solve", "--in", str(GOLDEN / "figure1_p.reduction"), "--budget", "1"]) == 2
    assert "StateBudgetExceeded" in capsys.readouterr().err
    assert main(["solve", "--in", str(tmp_path / "missing.txt")]) == 2
    assert main(["bogus"]) == 2
    assert main(["reduce"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("graph k=3 sizes=2,2,3\nedge i=1 j=2 a=1 b=1\n")
    assert main(["reduce", "--in", str(bad)]) == 2  # not nice


def test_cli_roundtrip_and_verify(tmp_path, capsys):
    out = tmp_path / "rep.txt"
    assert main(["roundtrip", "--trials", "4", "--variant", "w", "--out", str(out)]) == 0
    assert "check=roundtrip.w status=pass" in out.read_text()
    assert main(["roundtrip", "--trials", "4", "--pattern", "path"]) == 0
    assert "roundtrip.p+pattern" in capsys.readouterr().out
    assert main(["verify", "--trials", "2"]) == 0
    text = capsys.readouterr().out
    assert "check=golden.vertex_P status=pass" in text and "status=fail" not in text
