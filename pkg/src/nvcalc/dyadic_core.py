"""Exact representation of standard dyadic rectangles, patterns, and corners.

A *binary word* ``w = b1 b2 ... bk`` (a ``str`` over ``'0'``/``'1'``) encodes
the half-open interval ``[0.b1b2...bk, 0.b1b2...bk + 2^-k)`` inside ``[0, 1)``;
the empty word encodes ``[0, 1)`` itself.  An n-dimensional *rectangle* is an
n-tuple of binary words and encodes the product of its coordinate intervals.
A *pattern* is a finite set of rectangles that partition the unit cube.

All arithmetic is exact: endpoints and corner coordinates are
``fractions.Fraction`` values with power-of-two denominators.  Rectangles are
always half-open, so the coordinate value 1 can occur only in corner points,
never in membership tests.  Every value here is immutable.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Point",
    "Rect",
    "Pattern",
    "RectRelation",
    "SplitLeaf",
    "SplitNode",
    "SplitTree",
    "common_refinement",
    "contains_point",
    "corner_projections",
    "corners",
    "count_rects",
    "enumerate_rects",
    "halve",
    "is_partition",
    "pattern_from_tree",
    "rect_Il",
    "rect_Ir",
    "rect_intersect",
    "rect_relation",
    "tree_leaves",
    "word_interval",
    "word_value",
]

#: An exact point of the closed unit cube: a tuple of dyadic rationals.
Point = tuple[Fraction, ...]


def _check_word(w: str) -> str:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise ValueError(f"binary word must be a str over '0'/'1', got {w!r}")
    return w


def word_value(w: str) -> Fraction:
    """Left endpoint of the interval encoded by ``w``."""
    if not w:
        return Fraction(0)
    return Fraction(int(w, 2), 2 ** len(w))


def word_interval(w: str) -> tuple[Fraction, Fraction]:
    """Half-open interval ``[lo, hi)`` encoded by ``w``; the empty word gives [0, 1)."""
    lo = word_value(w)
    return lo, lo + Fraction(1, 2 ** len(w))


class RectRelation(enum.Enum):
    """Containment relation between two rectangles of equal dimension."""

    DISJOINT = "disjoint"
    A_CONTAINS_B = "a_contains_b"
    B_CONTAINS_A = "b_contains_a"
    EQUAL = "equal"
    PARTIAL_OVERLAP = "partial_overlap"


@dataclass(frozen=True, order=True)
class Rect:
    """A standard dyadic rectangle: one binary word per coordinate.

    Total depth is the sum of the word lengths; the volume is ``2**-depth``.
    The all-empty tuple encodes the whole unit cube.
    """

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.words:
            raise ValueError("a rectangle needs at least one coordinate")
        for w in self.words:
            _check_word(w)

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def depth(self) -> int:
        return sum(len(w) for w in self.words)

    @property
    def volume(self) -> Fraction:
        return Fraction(1, 2**self.depth)

    def interval(self, d: int) -> tuple[Fraction, Fraction]:
        """Half-open coordinate interval along 1-based coordinate ``d``."""
        return word_interval(self.words[d - 1])

    def intervals(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(word_interval(w) for w in self.words)

    @staticmethod
    def cube(n: int) -> "Rect":
        """The whole unit cube in dimension ``n``."""
        if n < 1:
            raise ValueError("dimension must be >= 1")
        return Rect(("",) * n)


def rect_Il(n: int) -> Rect:
    """The left half-cube ``[0, 1/2) x I^(n-1)``."""
    return Rect(("0",) + ("",) * (n - 1))


def rect_Ir(n: int) -> Rect:
    """The right half-cube ``[1/2, 1) x I^(n-1)``."""
    return Rect(("1",) + ("",) * (n - 1))


def halve(r: Rect, d: int) -> tuple[Rect, Rect]:
    """Split ``r`` along 1-based coordinate ``d`` into its two halves."""
    if not 1 <= d <= r.dim:
        raise ValueError(f"coordinate {d} out of range for dimension {r.dim}")
    w = r.words
    lo = Rect(w[: d - 1] + (w[d - 1] + "0",) + w[d:])
    hi = Rect(w[: d - 1] + (w[d - 1] + "1",) + w[d:])
    return lo, hi


def _word_relation(a: str, b: str) -> RectRelation:
    """1-D nesting dichotomy: intervals are equal, nested, or disjoint."""
    if a == b:
        return RectRelation.EQUAL
    if b.startswith(a):
        return RectRelation.A_CONTAINS_B
    if a.startswith(b):
        return RectRelation.B_CONTAINS_A
    return RectRelation.DISJOINT


def rect_relation(a: Rect, b: Rect) -> RectRelation:
    """Exact containment relation between same-dimension rectangles.

    Partial overlap happens only when the containment direction differs
    across coordinates; interiors intersect iff no coordinate pair is
    prefix-incomparable.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    per_coord = [_word_relation(x, y) for x, y in zip(a.words, b.words)]
    if any(rel is RectRelation.DISJOINT for rel in per_coord):
        return RectRelation.DISJOINT
    narrowing = {RectRelation.EQUAL, RectRelation.A_CONTAINS_B}
    widening = {RectRelation.EQUAL, RectRelation.B_CONTAINS_A}
    if all(rel is RectRelation.EQUAL for rel in per_coord):
        return RectRelation.EQUAL
    if all(rel in narrowing for rel in per_coord):
        return RectRelation.A_CONTAINS_B
    if all(rel in widening for rel in per_coord):
        return RectRelation.B_CONTAINS_A
    return RectRelation.PARTIAL_OVERLAP


def rect_intersect(a: Rect, b: Rect) -> Rect | None:
    """Intersection of two rectangles (a rectangle again, or None if empty)."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    out = []
    for x, y in zip(a.words, b.words):
        if y.startswith(x):
            out.append(y)
        elif x.startswith(y):
            out.append(x)
        else:
            return None
    return Rect(tuple(out))


def contains_point(r: Rect, p: Point) -> bool:
    """Half-open membership: every coordinate satisfies ``lo <= x < hi``."""
    if len(p) != r.dim:
        raise ValueError(f"point dimension {len(p)} != rect dimension {r.dim}")
    for w, x in zip(r.words, p):
        lo, hi = word_interval(w)
        if not (lo <= x < hi):
            return False
    return True


def is_partition(rects: Iterable[Rect]) -> bool:
    """True iff the rectangles tile the unit cube.

    Checked exactly: volumes sum to 1 and all pairs have disjoint interiors.
    The empty collection is not a partition.
    """
    rs = list(rects)
    if not rs:
        return False
    dim = rs[0].dim
    if any(r.dim != dim for r in rs):
        raise ValueError("mixed dimensions")
    if sum(r.volume for r in rs) != 1:
        return False
    for i, a in enumerate(rs):
        for b in rs[i + 1 :]:
            if rect_relation(a, b) is not RectRelation.DISJOINT:
                return False
    return True


@dataclass(frozen=True)
class Pattern:
    """A finite partition of the unit cube into rectangles (sorted, immutable)."""

    dim: int
    rects: tuple[Rect, ...]

    @staticmethod
    def from_rects(rects: Iterable[Rect], check: bool = True) -> "Pattern":
        rs = sorted(set(rects), key=lambda r: r.words)
        if not rs:
            raise ValueError("a pattern needs at least one rectangle")
        if check and not is_partition(rs):
            raise ValueError("rectangles do not partition the unit cube")
        return Pattern(rs[0].dim, tuple(rs))

    def __len__(self) -> int:
        return len(self.rects)

    def __iter__(self) -> Iterator[Rect]:
        return iter(self.rects)


@dataclass(frozen=True)
class SplitLeaf:
    """Leaf of a split tree: an undivided cell."""


@dataclass(frozen=True)
class SplitNode:
    """Internal node: halve the current cell along coordinate ``d``, then recurse."""

    d: int
    left: "SplitTree"
    right: "SplitTree"


SplitTree = SplitLeaf | SplitNode


def tree_leaves(tree: SplitTree, n: int) -> list[Rect]:
    """Leaf rectangles of a split tree in left-to-right order."""

    out: list[Rect] = []

    def walk(t: SplitTree, cell: Rect) -> None:
        if isinstance(t, SplitLeaf):
            out.append(cell)
            return
        if not 1 <= t.d <= n:
            raise ValueError(f"split coordinate {t.d} out of range for dimension {n}")
        lo, hi = halve(cell, t.d)
        walk(t.left, lo)
        walk(t.right, hi)

    walk(tree, Rect.cube(n))
    return out


def pattern_from_tree(tree: SplitTree, n: int) -> Pattern:
    """Pattern formed by the leaves of a split tree (always a valid partition)."""
    return Pattern.from_rects(tree_leaves(tree, n), check=False)


def common_refinement(p: Pattern, q: Pattern) -> Pattern:
    """All nonempty pairwise intersections of pieces; refines both arguments."""
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    pieces = []
    for a in p.rects:
        for b in q.rects:
            m = rect_intersect(a, b)
            if m is not None:
                pieces.append(m)
    return Pattern.from_rects(pieces, check=False)


def corners(p: Pattern) -> frozenset[Point]:
    """All corner points of the pieces of ``p`` (deduplicated).

    Each piece contributes the ``2^n`` points whose d-th coordinate is either
    endpoint of its d-th interval; the upper endpoint may equal 1.
    """
    pts: set[Point] = set()
    for r in p.rects:
        axes = [(lo, hi) for lo, hi in r.intervals()]
        pts.update(itertools.product(*axes))
    return frozenset(pts)


def corner_projections(p: Pattern) -> tuple[frozenset[Fraction], ...]:
    """Per-coordinate projections of the corner set of ``p``."""
    proj: list[set[Fraction]] = [set() for _ in range(p.dim)]
    for r in p.rects:
        for d, (lo, hi) in enumerate(r.intervals()):
            proj[d].update((lo, hi))
    return tuple(frozenset(s) for s in proj)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered length vectors summing to ``total``, ascending lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def count_rects(n: int, D: int) -> int:
    """Number of rectangles of total depth in [1, D] in dimension n."""
    return sum(comb(k + n - 1, n - 1) * 2**k for k in range(1, D + 1))


def enumerate_rects(n: int, D: int) -> Iterator[Rect]:
    """Every rectangle of total depth 1..D exactly once, deterministic order.

    Order: by total depth, then by per-coordinate length vector, then by the
    word tuple, all ascending.  The whole cube (depth 0) is excluded.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if D < 0:
        raise ValueError("depth bound must be >= 0")
    for k in range(1, D + 1):
        for lengths in _compositions(k, n):
            coords: list[Sequence[str]] = [
                ["".join(bits) for bits in itertools.product("01", repeat=m)]
                for m in lengths
            ]
            for words in itertools.product(*coords):
                yield Rect(tuple(words))
