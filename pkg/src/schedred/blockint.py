"""Fixed-width base-N integers with a counting/small/large/vertex block layout.

Every number in a reduction instance lives in ``[0, N**D)`` and is stored as a
tuple of ``D`` digits, least significant first.  The digit positions are
grouped as::

    digit 0                      counting block
    digits 1 .. B(m+2)           small blocks, one per class pair (m+2 digits)
    digits B(m+2)+1 .. 2B(m+2)   large blocks, one per class pair
    top k digits                 vertex selection block

Pairs are indexed by their lexicographic rank ``g(i, j)``; ``G(i, j)`` and
``F(i, j)`` are the lowest digit of the pair's small and large block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Pair = tuple[int, int]


class InvalidLayout(ValueError):
    pass


class ExponentOutOfRange(IndexError):
    pass


class LayoutMismatch(ValueError):
    pass


class Overflow(ArithmeticError):
    pass


class CarryDetected(ArithmeticError):
    def __init__(self, position: int):
        super().__init__(f"digit sum reaches the radix at position {position}")
        self.position = position


def all_pairs(k: int) -> tuple[Pair, ...]:
    return tuple(combinations(range(1, k + 1), 2))


@dataclass(frozen=True)
class BlockLayout:
    k: int
    m: int
    N: int
    pairs: tuple[Pair, ...]
    _rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.k < 2:
            raise InvalidLayout(f"need k >= 2, got {self.k}")
        if self.m < 1:
            raise InvalidLayout(f"need m >= 1, got {self.m}")
        if self.N < 2:
            raise InvalidLayout(f"radix must be >= 2, got {self.N}")
        pairs = tuple((int(i), int(j)) for i, j in self.pairs)
        for i, j in pairs:
            if not 1 <= i < j <= self.k:
                raise InvalidLayout(f"pair {(i, j)} outside 1 <= i < j <= {self.k}")
        if len(set(pairs)) != len(pairs):
            raise InvalidLayout("duplicate pairs")
        if list(pairs) != sorted(pairs):
            raise InvalidLayout("pairs must be sorted lexicographically")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_rank", {p: r for r, p in enumerate(pairs)})

    @property
    def B(self) -> int:
        return len(self.pairs)

    @property
    def block_width(self) -> int:
        return self.m + 2

    @property
    def D(self) -> int:
        return self.k + 2 * self.B * (self.m + 2) + 1

    @property
    def vertex_base(self) -> int:
        """Exponent just below the vertex block; ``X_i = N**(vertex_base + i)``."""
        return 2 * self.B * (self.m + 2)

    def has_pair(self, i: int, j: int) -> bool:
        return (i, j) in self._rank

    def g(self, i: int, j: int) -> int:
        try:
            return self._rank[(i, j)]
        except KeyError:
            raise InvalidLayout(f"pair {(i, j)} is not part of this layout") from None

    def f(self, i: int, j: int) -> int:
        return self.B + self.g(i, j)

    def G(self, i: int, j: int) -> int:
        return (self.m + 2) * self.g(i, j) + 1

    def F(self, i: int, j: int) -> int:
        return (self.m + 2) * self.f(i, j) + 1

    def zero(self) -> "BlockInt":
        return BlockInt(self, (0,) * self.D)

    def header(self) -> str:
        pairs = ",".join(f"{i}-{j}" for i, j in self.pairs)
        return f"k={self.k} m={self.m} N={self.N} pairs={pairs}"


def layout_new(k: int, m: int, pairs: Iterable[Pair] | None = None, N: int = 2) -> BlockLayout:
    if pairs is None:
        pairs = all_pairs(k) if k >= 2 else ()
    return BlockLayout(k, m, N, tuple(pairs))


def choose_radix(k: int, n: int, m: int, job_count: int) -> int:
    # Every digit of an early-set sum is bounded by a job multiplicity, so a
    # 4x margin over the job count keeps all sums carry-free.
    return 4 * (job_count + n + m + 2)


class BlockInt:
    """Immutable digit vector tied to a layout.

    ``+`` propagates carries (and raises `Overflow` past the top digit);
    `add_nocarry` is the strict digitwise variant used to audit encodings.
    Ordering agrees with the represented integer.
    """

    __slots__ = ("layout", "digits", "_value")

    def __init__(self, layout: BlockLayout, digits: Sequence[int]):
        digits = tuple(int(x) for x in digits)
        if len(digits) != layout.D:
            raise ValueError(f"expected {layout.D} digits, got {len(digits)}")
        for e, x in enumerate(digits):
            if not 0 <= x < layout.N:
                raise ValueError(f"digit {x} at position {e} outside [0, {layout.N})")
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "_value", None)

    def __setattr__(self, name, value):
        raise AttributeError("BlockInt is immutable")

    @classmethod
    def from_int(cls, layout: BlockLayout, value: int) -> "BlockInt":
        if value < 0:
            raise ValueError("negative values are not representable")
        digits = []
        for _ in range(layout.D):
            value, r = divmod(value, layout.N)
            digits.append(r)
        if value:
            raise Overflow("value does not fit in the layout's digit count")
        return cls(layout, digits)

    def __int__(self) -> int:
        if self._value is None:
            acc = 0
            for x in reversed(self.digits):
                acc = acc * self.layout.N + x
            object.__setattr__(self, "_value", acc)
        return self._value

    __index__ = __int__

    def _check(self, other):
        if not isinstance(other, BlockInt):
            return NotImplemented
        if other.layout != self.layout:
            raise LayoutMismatch("operands use different layouts")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return add(self, other)

    def __eq__(self, other):
        if not isinstance(other, BlockInt):
            return NotImplemented
        return self.layout == other.layout and self.digits == other.digits

    def __hash__(self):
        return hash((self.layout, self.digits))

    def __lt__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return cmp(self, other) < 0

    def __le__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return cmp(self, other) <= 0

    def __gt__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return cmp(self, other) > 0

    def __ge__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return cmp(self, other) >= 0

    def __repr__(self):
        return f"BlockInt({render_blocks(self)})"

    def __str__(self):
        return format_bint(self)

    def digit(self, e: int) -> int:
        return self.digits[e]

    @property
    def counting(self) -> int:
        return self.digits[0]


def pow_digit(layout: BlockLayout, e: int, coeff: int = 1) -> BlockInt:
    """``coeff * N**e`` as a single nonzero digit (``coeff < N``)."""
    if not 0 <= e < layout.D:
        raise ExponentOutOfRange(f"exponent {e} outside [0, {layout.D})")
    digits = [0] * layout.D
    digits[e] = coeff
    return BlockInt(layout, digits)


def add(a: BlockInt, b: BlockInt) -> BlockInt:
    if a.layout != b.layout:
        raise LayoutMismatch("operands use different layouts")
    N = a.layout.N
    out = []
    carry = 0
    for x, y in zip(a.digits, b.digits):
        carry, r = divmod(x + y + carry, N)
        out.append(r)
    if carry:
        raise Overflow("sum exceeds the layout's digit count")
    return BlockInt(a.layout, out)


def add_nocarry(a: BlockInt, b: BlockInt) -> BlockInt:
    if a.layout != b.layout:
        raise LayoutMismatch("operands use different layouts")
    N = a.layout.N
    out = []
    for e, (x, y) in enumerate(zip(a.digits, b.digits)):
        s = x + y
        if s >= N:
            raise CarryDetected(e)
        out.append(s)
    return BlockInt(a.layout, out)


def sum_nocarry(values: Iterable[BlockInt], layout: BlockLayout) -> BlockInt:
    acc = layout.zero()
    for v in values:
        acc = add_nocarry(acc, v)
    return acc


def times(a: BlockInt, c: int) -> BlockInt:
    """``c * a`` by repeated carry-free addition."""
    acc = a.layout.zero()
    for _ in range(c):
        acc = add_nocarry(acc, a)
    return acc


def cmp(a: BlockInt, b: BlockInt) -> int:
    if a.layout != b.layout:
        raise LayoutMismatch("operands use different layouts")
    # Most significant digit first; digits are canonical so this is integer order.
    for x, y in zip(reversed(a.digits), reversed(b.digits)):
        if x != y:
            return -1 if x < y else 1
    return 0


def _digit_str(ds: Iterable[int]) -> str:
    return "".join(str(x) for x in ds)


def block_digits(a: BlockInt, block: str, pair: Pair | None = None) -> tuple[int, ...]:
    """Digits of one block, most significant first."""
    lay = a.layout
    if block == "vertex":
        lo, width = lay.vertex_base + 1, lay.k
    elif block == "large":
        lo, width = lay.F(*pair), lay.block_width
    elif block == "small":
        lo, width = lay.G(*pair), lay.block_width
    elif block == "counting":
        lo, width = 0, 1
    else:
        raise ValueError(f"unknown block {block!r}")
    return tuple(reversed(a.digits[lo:lo + width]))


def render_blocks(a: BlockInt) -> str:
    """``vertex|large_{B-1}|...|large_0|small_{B-1}|...|small_0|counting``."""
    lay = a.layout
    parts = [_digit_str(block_digits(a, "vertex"))]
    for p in reversed(lay.pairs):
        parts.append(_digit_str(block_digits(a, "large", p)))
    for p in reversed(lay.pairs):
        parts.append(_digit_str(block_digits(a, "small", p)))
    parts.append(str(a.digits[0]))
    return "|".join(parts)


def format_bint(a: BlockInt) -> str:
    return f"bint N={a.layout.N} d=[{','.join(str(x) for x in a.digits)}]"


BINT_RE = re.compile(r"bint N=(\d+) d=\[([0-9,]*)\]")


def parse_bint(text: str, layout: BlockLayout) -> BlockInt:
    mo = BINT_RE.fullmatch(text.strip())
    if mo is None:
        raise ValueError(f"not a bint literal: {text!r}")
    if int(mo.group(1)) != layout.N:
        raise LayoutMismatch(f"literal radix {mo.group(1)} != layout radix {layout.N}")
    body = mo.group(2)
    digits = [int(x) for x in body.split(",")] if body else []
    return BlockInt(layout, digits)
