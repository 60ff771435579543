"""``schedred reduce|solve|roundtrip|verify|gen``.

Exit status: 0 when every check passes, 1 when a check fails, 2 for usage,
file or solver errors.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .fileio import FormatError, parse_pattern, read_text, write_text
from .graphs import PatternGraph
from .reduction import BadPattern, NotNice
from .solvers import HorizonTooLarge, StateBudgetExceeded, TooLarge


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="schedred", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, *, io=True):
        if io:
            p.add_argument("--in", dest="inp", help="input file")
        p.add_argument("--out", help="output file (default: stdout for reports)")
        p.add_argument("--time", action="store_true", help="append wall time to report lines")

    p = sub.add_parser("reduce", help="graph file -> reduction file")
    common(p)
    p.add_argument("--variant", choices=("p", "w"), default="p")
    p.add_argument("--pattern", help="pattern file for the subgraph-isomorphism build")

    p = sub.add_parser("solve", help="solve an instance or reduction file")
    common(p)
    p.add_argument("--alg", choices=("perm", "subset", "pareto", "lm", "lawler-moore"), default="pareto")
    p.add_argument("--budget", type=int, default=10**7)

    p = sub.add_parser("roundtrip", help="solver optimum vs brute-force oracle on random graphs")
    common(p, io=False)
    p.add_argument("--variant", choices=("p", "w"), default="p")
    p.add_argument("--pattern", help="pattern file, or 'path'/'complete'")
    p.add_argument("--alg", choices=("pareto", "lm", "subset"), default="pareto")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=_ints, default=(2,), help="class sizes to cycle through, e.g. 2 or 2,3")
    p.add_argument("--m", type=_ints, default=(1, 2), help="edge counts to cycle through, e.g. 1,2")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("verify", help="golden strings, structure, witness and vertex-lemma suites")
    common(p, io=False)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="write a random nice graph or a named fixture")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fixture", choices=sorted(harness.FIXTURES))
    return ap


def _pattern(arg: str | None, k: int) -> PatternGraph | None:
    if arg is None:
        return None
    if arg == "path":
        return PatternGraph.path(k)
    if arg == "complete":
        return PatternGraph.complete(k)
    return parse_pattern(read_text(arg))


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.cmd == "gen":
        _emit(harness.cmd_gen(args.k, args.n, args.m, args.seed, args.fixture), args.out)
        return 0
    if args.cmd in ("reduce", "solve") and not args.inp:
        raise ValueError(f"{args.cmd} needs --in")
    if args.cmd == "reduce":
        _, rep = harness.cmd_reduce(args.inp, args.variant, args.pattern, args.out)
        sys.stdout.write(rep.format(args.time) + "\n")
        return 0 if rep.ok else 1
    if args.cmd == "solve":
        rep = harness.cmd_solve(args.inp, args.alg, args.budget)
    elif args.cmd == "roundtrip":
        cfg = harness.ExperimentConfig(
            suite="roundtrip", k=args.k, n=args.n, m=args.m, trials=args.trials, seed=args.seed,
            variant=args.variant, pattern=_pattern(args.pattern, args.k), alg=args.alg,
            budget=args.budget, out=args.out, workers=args.workers,
        )
        rep = harness.cmd_roundtrip(cfg)
    else:
        rep = harness.cmd_verify_lemmas(harness.ExperimentConfig(suite="verify", trials=args.trials,
                                                                 seed=args.seed))
    _emit(rep.format(args.time) + "\n", args.out)
    return 0 if rep.ok else 1


def main(argv=None) -> int:
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        code = 2 if exc.code not in (0, None) else 0
    except (OSError, FormatError, ValueError, NotNice, BadPattern,
            StateBudgetExceeded, TooLarge, HorizonTooLarge) as exc:
        sys.stderr.write(f"schedred: {type(exc).__name__}: {exc}\n")
        code = 2
    return code


if __name__ == "__main__":
    sys.exit(main())
