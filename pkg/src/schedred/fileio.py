"""Line-oriented UTF-8 text formats for graphs, patterns, instances and reductions.

Every ``format_*`` has a matching ``parse_*`` and ``parse(format(x)) == x``.
Numbers are decimal integers for word instances and ``bint`` literals for
block instances, so block values round-trip digit for digit.
"""

from __future__ import annotations

import re
from pathlib import Path

from .blockint import BlockLayout, format_bint, parse_bint
from .graphs import KPartiteGraph, PatternGraph
from .reduction import ReductionOutput, parse_tag
from .schedcore import Instance, Job


class FormatError(ValueError):
    pass


def _fields(line: str, head: str) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != head:
        raise FormatError(f"expected a {head!r} line, got {line!r}")
    out = {}
    for tok in parts[1:]:
        key, sep, val = tok.partition("=")
        if not sep:
            raise FormatError(f"malformed field {tok!r} in {line!r}")
        out[key] = val
    return out


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _pairs(text: str) -> tuple[tuple[int, int], ...]:
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        a, _, b = tok.partition("-")
        out.append((int(a), int(b)))
    return tuple(out)


def _pair_text(pairs) -> str:
    return ",".join(f"{i}-{j}" for i, j in pairs)


# -- graphs and patterns ---------------------------------------------------

def format_graph(g: KPartiteGraph) -> str:
    out = [f"graph k={g.k} sizes={','.join(map(str, g.class_size))}"]
    for (i, j), lst in sorted(g.edges.items()):
        out += [f"edge i={i} j={j} a={a} b={b}" for a, b in lst]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> KPartiteGraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty graph file")
    try:
        head = _fields(lines[0], "graph")
        k = int(head["k"])
        sizes = tuple(int(x) for x in head["sizes"].split(","))
        edges: dict[tuple[int, int], list] = {}
        for ln in lines[1:]:
            f = _fields(ln, "edge")
            edges.setdefault((int(f["i"]), int(f["j"])), []).append((int(f["a"]), int(f["b"])))
        return KPartiteGraph(k, sizes, {p: tuple(v) for p, v in edges.items()})
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad graph file: {exc}") from exc


def format_pattern(h: PatternGraph) -> str:
    return "\n".join([f"pattern l={h.l}"] + [f"hedge i={i} j={j}" for i, j in h.sorted_edges()]) + "\n"


def parse_pattern(text: str) -> PatternGraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty pattern file")
    try:
        l = int(_fields(lines[0], "pattern")["l"])
        edges = []
        for ln in lines[1:]:
            f = _fields(ln, "hedge")
            edges.append((int(f["i"]), int(f["j"])))
        return PatternGraph(l, frozenset(edges))
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad pattern file: {exc}") from exc


# -- instances and reductions ----------------------------------------------

_VAL = r"(\d+|bint N=\d+ d=\[[0-9,]*\])"
_JOB_RE = re.compile(rf"job id=(\d+) tag=(\S*) p={_VAL} w={_VAL} d={_VAL}")
_HEAD_RE = re.compile(
    r"instance jobs=(?P<jobs>\d+) numeric=(?P<numeric>word|block)"
    r"(?: layout k=(?P<k>\d+) m=(?P<m>\d+) N=(?P<N>\d+) pairs=(?P<pairs>[0-9,\-]*))?"
    r"(?: variant=(?P<variant>[pw]))?(?: pattern=(?P<pattern>[0-9,\-]*))?"
)


def _val(v, layout) -> str:
    return str(int(v)) if layout is None else format_bint(v)


def _parse_val(text: str, layout: BlockLayout | None):
    if layout is None:
        if not text.isdigit():
            raise FormatError(f"word instance holds a non-integer value {text!r}")
        return int(text)
    if text.isdigit():
        raise FormatError("block instance holds a plain integer value")
    return parse_bint(text, layout)


def _header(inst: Instance, extra: str = "") -> str:
    head = f"instance jobs={len(inst)} numeric={inst.numeric}"
    if inst.layout is not None:
        head += " layout " + inst.layout.header()
    return head + extra


def _job_lines(inst: Instance) -> list[str]:
    out = []
    for j in inst.jobs:
        if any(c.isspace() for c in j.tag):
            raise FormatError(f"job tag {j.tag!r} contains whitespace")
        lay = inst.layout
        out.append(f"job id={j.id} tag={j.tag} p={_val(j.p, lay)} w={_val(j.w, lay)} d={_val(j.d, lay)}")
    return out


def format_instance(inst: Instance) -> str:
    return "\n".join([_header(inst)] + _job_lines(inst)) + "\n"


def _parse_body(lines: list[str]):
    mo = _HEAD_RE.fullmatch(lines[0]) if lines else None
    if mo is None:
        raise FormatError(f"bad instance header {lines[0] if lines else ''!r}")
    layout = None
    if mo["numeric"] == "block":
        if mo["k"] is None:
            raise FormatError("block instances need a layout")
        layout = BlockLayout(int(mo["k"]), int(mo["m"]), int(mo["N"]), _pairs(mo["pairs"]))
    count = int(mo["jobs"])
    jobs = []
    for ln in lines[1:count + 1]:
        jm = _JOB_RE.fullmatch(ln)
        if jm is None:
            raise FormatError(f"bad job line {ln!r}")
        jid, tag, p, w, d = jm.groups()
        jobs.append(Job(int(jid), _parse_val(p, layout), _parse_val(w, layout), _parse_val(d, layout), tag))
    if len(jobs) != count:
        raise FormatError(f"header announces {count} jobs, found {len(jobs)}")
    try:
        inst = Instance(tuple(jobs), layout)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return mo, inst, lines[count + 1:]


def parse_instance(text: str) -> Instance:
    mo, inst, rest = _parse_body(_lines(text))
    if rest or mo["variant"]:
        raise FormatError("trailing lines: this looks like a reduction file")
    return inst


def format_reduction(red: ReductionOutput) -> str:
    extra = f" variant={red.variant}"
    if red.pattern is not None:
        extra += f" pattern={_pair_text(red.pattern.sorted_edges())}"
    out = [_header(red.instance, extra)] + _job_lines(red.instance)
    out.append(f"threshold {format_bint(red.threshold)}")
    out += [f"provenance id={i} tag={r.tag}" for i, r in enumerate(red.roles)]
    return "\n".join(out) + "\n"


def parse_reduction(text: str) -> ReductionOutput:
    mo, inst, rest = _parse_body(_lines(text))
    if inst.layout is None or not mo["variant"]:
        raise FormatError("reduction files need a block layout and a variant")
    if not rest or not rest[0].startswith("threshold "):
        raise FormatError("missing threshold line")
    threshold = parse_bint(rest[0][len("threshold "):], inst.layout)
    roles = []
    for pos, ln in enumerate(rest[1:]):
        f = _fields(ln, "provenance")
        if int(f.get("id", -1)) != pos:
            raise FormatError(f"provenance ids out of order at {ln!r}")
        roles.append(parse_tag(f["tag"]))
    if len(roles) != len(inst):
        raise FormatError("provenance must cover every job")
    pattern = None
    if mo["pattern"] is not None:
        pattern = PatternGraph(inst.layout.k, frozenset(_pairs(mo["pattern"])))
    return ReductionOutput(inst, threshold, tuple(roles), mo["variant"], pattern)


def sniff(text: str) -> str:
    """``"graph"``, ``"pattern"``, ``"reduction"`` or ``"instance"``."""
    lines = _lines(text)
    head = lines[0].split()[0] if lines else ""
    if head in ("graph", "pattern"):
        return head
    if head == "instance":
        return "reduction" if " variant=" in lines[0] else "instance"
    raise FormatError(f"unrecognized file kind {head!r}")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")
