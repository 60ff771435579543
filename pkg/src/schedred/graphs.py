"""k-partite graphs for Multicolored Clique and Partitioned Subgraph Isomorphism.

Vertices are ``v^i_a`` with class ``i`` in ``1..k`` and index ``a`` in
``1..|V_i|``.  Edges between classes ``i < j`` are kept as an ordered list of
``(a, b)`` pairs; the position in that list (1-based) is the edge's label
``ell`` used by the reduction.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, Sequence

Pair = tuple[int, int]


class NicenessUnsafe(ValueError):
    pass


class InvalidDensity(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True, eq=True)
class KPartiteGraph:
    k: int
    class_size: tuple[int, ...]
    edges: Mapping[Pair, tuple[Pair, ...]]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.class_size)
        if len(sizes) != self.k:
            raise ValueError(f"expected {self.k} class sizes, got {len(sizes)}")
        clean = {}
        for (i, j), lst in sorted(self.edges.items()):
            if not 1 <= i < j <= self.k:
                raise ValueError(f"bad class pair {(i, j)}")
            lst = tuple((int(a), int(b)) for a, b in lst)
            for a, b in lst:
                if not (1 <= a <= sizes[i - 1] and 1 <= b <= sizes[j - 1]):
                    raise ValueError(f"edge {(a, b)} out of range for pair {(i, j)}")
            if len(set(lst)) != len(lst):
                raise ValueError(f"duplicate edge in pair {(i, j)}")
            if lst:
                clean[(i, j)] = lst
        object.__setattr__(self, "class_size", sizes)
        object.__setattr__(self, "edges", clean)

    def pair_edges(self, i: int, j: int) -> tuple[Pair, ...]:
        return self.edges.get((i, j), ())

    @property
    def n(self) -> int:
        return max(self.class_size)

    @property
    def m(self) -> int:
        return max((len(self.pair_edges(i, j)) for i, j in combinations(range(1, self.k + 1), 2)), default=0)

    def adjacent(self, i: int, a: int, j: int, b: int) -> bool:
        if i > j:
            i, a, j, b = j, b, i, a
        return (a, b) in self.pair_edges(i, j)


@dataclass(frozen=True)
class PatternGraph:
    l: int
    edges: frozenset

    def __post_init__(self):
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError("pattern graphs have no self-loops")
            if not (1 <= u <= self.l and 1 <= v <= self.l):
                raise ValueError(f"pattern edge {(u, v)} outside 1..{self.l}")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    def sorted_edges(self) -> tuple[Pair, ...]:
        return tuple(sorted(self.edges))

    @classmethod
    def complete(cls, l: int) -> "PatternGraph":
        return cls(l, frozenset(combinations(range(1, l + 1), 2)))

    @classmethod
    def path(cls, l: int) -> "PatternGraph":
        return cls(l, frozenset((i, i + 1) for i in range(1, l)))


Selection = tuple[int, ...]


def is_nice(g: KPartiteGraph) -> bool:
    if len(set(g.class_size)) != 1:
        return False
    counts = {len(g.pair_edges(i, j)) for i, j in combinations(range(1, g.k + 1), 2)}
    return len(counts) <= 1


def make_nice(g: KPartiteGraph) -> KPartiteGraph:
    """Pad classes and edge lists to equal sizes without creating k-cliques.

    Each pair that needs padding receives two fresh vertices of its own, and
    its padding edges join those two; fresh vertices therefore touch only one
    other class, which cannot complete a clique when k >= 3.
    """
    if g.k < 3:
        raise NicenessUnsafe("padding can create a 2-clique when k = 2")
    if is_nice(g):
        return g
    pairs = list(combinations(range(1, g.k + 1), 2))
    m = max(len(g.pair_edges(i, j)) for i, j in pairs)
    base = max(g.class_size)
    # Padding edges between one fresh vertex per side need distinct (a, b), so
    # a pair that lacks r edges gets r fresh vertices on both sides.
    need = {p: m - len(g.pair_edges(*p)) for p in pairs}
    extra = [0] * g.k
    fresh: dict[Pair, tuple[list[int], list[int]]] = {}
    for (i, j), r in need.items():
        if r == 0:
            continue
        left = [base + extra[i - 1] + t + 1 for t in range(r)]
        right = [base + extra[j - 1] + t + 1 for t in range(r)]
        extra[i - 1] += r
        extra[j - 1] += r
        fresh[(i, j)] = (left, right)
    size = base + max(extra)
    edges = {}
    for p in pairs:
        lst = list(g.pair_edges(*p))
        if p in fresh:
            left, right = fresh[p]
            lst.extend(zip(left, right))
        edges[p] = tuple(lst)
    return KPartiteGraph(g.k, (size,) * g.k, edges)


def _count(g: KPartiteGraph) -> int:
    return math.prod(g.class_size)


def _adjacency_sets(g: KPartiteGraph):
    return {p: set(lst) for p, lst in g.edges.items()}


def brute_psi(g: KPartiteGraph, h: PatternGraph, limit: int = 10**7) -> Selection | None:
    """First selection (lexicographic) adjacent on every pattern edge."""
    if h.l != g.k:
        raise ValueError(f"pattern has {h.l} vertices but graph has {g.k} classes")
    if _count(g) > limit:
        raise TooLarge(f"{_count(g)} selections exceed the limit {limit}")
    adj = _adjacency_sets(g)
    need = [(i, j, adj.get((i, j), set())) for i, j in h.sorted_edges()]
    for sel in product(*(range(1, s + 1) for s in g.class_size)):
        if all((sel[i - 1], sel[j - 1]) in es for i, j, es in need):
            return sel
    return None


def brute_mcc(g: KPartiteGraph, limit: int = 10**7) -> Selection | None:
    return brute_psi(g, PatternGraph.complete(g.k), limit)


def is_clique(g: KPartiteGraph, sel: Sequence[int]) -> bool:
    return all(g.adjacent(i, sel[i - 1], j, sel[j - 1]) for i, j in combinations(range(1, g.k + 1), 2))


def figure1() -> KPartiteGraph:
    """The nice 3-partite example graph (n = m = 4), edges in drawing order."""
    return KPartiteGraph(
        3,
        (4, 4, 4),
        {
            (1, 2): ((1, 1), (1, 2), (3, 3), (4, 4)),
            (1, 3): ((1, 3), (1, 4), (2, 1), (3, 3)),
            (2, 3): ((1, 4), (1, 3), (2, 3), (3, 2)),
        },
    )


def random_nice(k: int, n: int, m: int, seed: int) -> KPartiteGraph:
    if not 1 <= m <= n * n:
        raise InvalidDensity(f"m={m} must lie in 1..n^2={n * n}")
    rng = random.Random(seed)
    cells = list(product(range(1, n + 1), repeat=2))
    edges = {p: tuple(rng.sample(cells, m)) for p in combinations(range(1, k + 1), 2)}
    return KPartiteGraph(k, (n,) * k, edges)
