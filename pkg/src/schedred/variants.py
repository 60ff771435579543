"""Weight-swapped and pattern-restricted versions of the reduction.

`build_w` trades the roles of processing time and weight inside the edge
gadgets (every digit but the counting digit), which bounds the number of
distinct weights instead of processing times.  `build_eth` keeps only the
blocks of class pairs that are edges of a pattern graph H, reducing from
Partitioned Subgraph Isomorphism.
"""

from __future__ import annotations

import enum
from itertools import combinations
from typing import Sequence

from .graphs import KPartiteGraph, PatternGraph
from .reduction import (
    DEFAULT,
    BadPattern,
    Encoding,
    NotNice,
    ReductionOutput,
    _construct,
    witness,
)


class VariantKind(str, enum.Enum):
    P_SHARP = "p"
    W_SHARP = "w"


def build_w(g: KPartiteGraph, encoding: Encoding = DEFAULT) -> ReductionOutput:
    """Reduction with ``3k + 8 * C(k, 2)`` distinct weights."""
    if g.k < 2:
        raise NotNice("need at least two classes")
    return _construct(g, tuple(combinations(range(1, g.k + 1), 2)), "w", None, encoding)


def witness_w(red: ReductionOutput, selection: Sequence[int]):
    if red.variant != "w":
        raise ValueError("witness_w expects a weight-swapped reduction")
    return witness(red, selection)


def build_eth(g: KPartiteGraph, h: PatternGraph, kind: VariantKind | str = VariantKind.P_SHARP,
              encoding: Encoding = DEFAULT) -> ReductionOutput:
    kind = VariantKind(kind)
    if g.k < 3:
        raise BadPattern("pattern-restricted builds need at least three classes")
    if h.l != g.k:
        raise BadPattern(f"pattern has {h.l} vertices but the graph has {g.k} classes")
    pattern = None if h == PatternGraph.complete(g.k) else h
    return _construct(g, h.sorted_edges(), kind.value, pattern, encoding)
