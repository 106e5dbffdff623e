"""Exact group arithmetic for piecewise prefix-substitution bijections.

An *affine piece* is a pair of same-dimension rectangles ``dom -> ran`` and
denotes the unique orientation-preserving affine bijection between them: in
each coordinate, replace the prefix ``dom.words[d]`` of the binary expansion
by ``ran.words[d]`` (slope ``2**(len(dom_d) - len(ran_d))``).

An *element* is a finite set of affine pieces whose domains form a partition
of the unit cube and whose ranges form another; such a piece table induces a
self-bijection of the cube.  Composition, inversion, equality, restriction,
affinity tests, reduction, expansion, fuzz generation, and a bit-exact JSON
round-trip are provided.  Everything is immutable and exact.

Convention: ``compose(g, h)`` is the map "apply h first, then g" (so a word
written ``g h`` acts on the cube through its right factor first).  This is the
single global convention under which the whole relation suite of
:mod:`nvcalc.words_generators` passes.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from nvcalc.dyadic_core import (
    Pattern,
    Point,
    Rect,
    SplitLeaf,
    SplitNode,
    SplitTree,
    contains_point,
    is_partition,
    rect_intersect,
    tree_leaves,
    word_interval,
)

__all__ = [
    "AffinePiece",
    "Element",
    "affine_extension",
    "apply",
    "compose",
    "element_depth",
    "element_from_json",
    "element_to_json",
    "equals",
    "expansion",
    "identity",
    "inverse",
    "is_affine_on",
    "is_identity",
    "is_identity_on",
    "merge_pieces",
    "random_element",
    "restrict",
    "simplify",
    "support",
    "validate",
]


@dataclass(frozen=True, order=True)
class AffinePiece:
    """One prefix substitution ``dom -> ran`` between same-dimension rectangles."""

    dom: Rect
    ran: Rect

    def __post_init__(self) -> None:
        if self.dom.dim != self.ran.dim:
            raise ValueError("domain and range must share a dimension")

    @property
    def dim(self) -> int:
        return self.dom.dim

    @property
    def is_trivial(self) -> bool:
        """True iff the substitution fixes its domain pointwise."""
        return self.dom.words == self.ran.words

    def slope_exponents(self) -> tuple[int, ...]:
        """Per-coordinate slope exponents e_d with slope ``2**e_d``."""
        return tuple(
            len(u) - len(v) for u, v in zip(self.dom.words, self.ran.words)
        )

    def apply_point(self, p: Point) -> Point:
        """Exact image of a point of the (half-open) domain."""
        out = []
        for u, v, x in zip(self.dom.words, self.ran.words, p):
            lo_u, hi_u = word_interval(u)
            if not (lo_u <= x < hi_u):
                raise ValueError(f"{x} outside domain word {u!r}")
            lo_v, _ = word_interval(v)
            out.append(lo_v + (x - lo_u) * Fraction(2 ** len(u), 2 ** len(v)))
        return tuple(out)

    def image_of(self, sub: Rect) -> Rect:
        """Image of a rectangle nested in the domain (a rectangle again)."""
        words = []
        for u, v, w in zip(self.dom.words, self.ran.words, sub.words):
            if not w.startswith(u):
                raise ValueError(f"{sub} is not nested in domain {self.dom}")
            words.append(v + w[len(u):])
        return Rect(tuple(words))

    def restrict_to(self, sub: Rect) -> "AffinePiece":
        """The same map, restricted to a rectangle nested in the domain."""
        return AffinePiece(sub, self.image_of(sub))

    def inverted(self) -> "AffinePiece":
        return AffinePiece(self.ran, self.dom)


@dataclass(frozen=True)
class Element:
    """A piecewise prefix-substitution bijection of the unit cube.

    ``pieces`` are kept sorted by domain words, so equal piece tables compare
    and hash equal.
    """

    dim: int
    pieces: tuple[AffinePiece, ...]

    @staticmethod
    def from_pieces(pieces: Iterable[AffinePiece]) -> "Element":
        ps = tuple(sorted(pieces, key=lambda p: p.dom.words))
        if not ps:
            raise ValueError("an element needs at least one piece")
        dim = ps[0].dim
        if any(p.dim != dim for p in ps):
            raise ValueError("mixed dimensions in piece table")
        return Element(dim, ps)

    def domain_pattern(self) -> Pattern:
        return Pattern.from_rects((p.dom for p in self.pieces), check=False)

    def range_pattern(self) -> Pattern:
        return Pattern.from_rects((p.ran for p in self.pieces), check=False)


def identity(n: int) -> Element:
    """The identity element: one trivial piece on the whole cube."""
    cube = Rect.cube(n)
    return Element.from_pieces([AffinePiece(cube, cube)])


def validate(e: Element) -> bool:
    """True iff the domains and the ranges each partition the unit cube."""
    return is_partition(p.dom for p in e.pieces) and is_partition(
        p.ran for p in e.pieces
    )


def compose(g: Element, h: Element) -> Element:
    """The element acting as "apply ``h`` first, then ``g``" (i.e. g∘h)."""
    if g.dim != h.dim:
        raise ValueError(f"dimension mismatch: {g.dim} vs {h.dim}")
    pieces = []
    for ph in h.pieces:
        for pg in g.pieces:
            m = rect_intersect(ph.ran, pg.dom)
            if m is None:
                continue
            # m nests in ph.ran: pull back through h.  m nests in pg.dom:
            # push forward through g.
            dom = ph.inverted().image_of(m)
            ran = pg.image_of(m)
            pieces.append(AffinePiece(dom, ran))
    return Element.from_pieces(pieces)


def inverse(g: Element) -> Element:
    """Swap every piece's domain and range."""
    return Element.from_pieces(p.inverted() for p in g.pieces)


def apply(g: Element, p: Point) -> Point:
    """Exact image of a point of the half-open cube (no coordinate equals 1)."""
    if len(p) != g.dim:
        raise ValueError(f"point dimension {len(p)} != element dimension {g.dim}")
    for piece in g.pieces:
        if contains_point(piece.dom, p):
            return piece.apply_point(p)
    raise ValueError(f"no piece contains {p}; element invalid or point outside cube")


def is_identity(g: Element) -> bool:
    """True iff every piece's substitution is trivial."""
    return all(p.is_trivial for p in g.pieces)


def equals(g: Element, h: Element) -> bool:
    """Semantic equality of induced maps: ``g∘h^{-1}`` is the identity."""
    if g.dim != h.dim:
        raise ValueError(f"dimension mismatch: {g.dim} vs {h.dim}")
    return is_identity(compose(g, inverse(h)))


def restrict(g: Element, r: Rect) -> tuple[AffinePiece, ...]:
    """The pieces of ``g`` cut down to ``r``; their domains partition ``r``."""
    out = []
    for piece in g.pieces:
        m = rect_intersect(piece.dom, r)
        if m is not None:
            out.append(piece.restrict_to(m))
    return tuple(sorted(out, key=lambda p: p.dom.words))


def affine_extension(
    pieces: Sequence[AffinePiece], r: Rect
) -> AffinePiece | None:
    """Single prefix substitution on ``r`` agreeing with ``pieces``, if any.

    ``pieces`` must be affine pieces whose domains are nested in ``r`` and
    tile it.  If one substitution ``r -> W`` restricts to every piece, it is
    returned; otherwise None.  The candidate is forced by any single piece:
    writing the piece's domain as ``r`` extended by a suffix ``s`` per
    coordinate, its range must be ``W`` extended by the same suffix, so ``W``
    is recovered by stripping ``s`` — if stripping is impossible, or any
    piece disagrees with the candidate, no extension exists.
    """
    if not pieces:
        return None
    first = pieces[0]
    target = []
    for rw, u, v in zip(r.words, first.dom.words, first.ran.words):
        if not u.startswith(rw):
            raise ValueError("piece domain not nested in the target rectangle")
        s = u[len(rw):]
        if s:
            if not v.endswith(s):
                return None
            target.append(v[: len(v) - len(s)])
        else:
            target.append(v)
    candidate = AffinePiece(r, Rect(tuple(target)))
    for piece in pieces:
        if candidate.image_of(piece.dom).words != piece.ran.words:
            return None
    return candidate


def is_affine_on(g: Element, r: Rect) -> AffinePiece | None:
    """The restriction of ``g`` to ``r`` as one substitution, if it is one.

    Returns the piece with domain exactly ``r``, or None when the restriction
    is genuinely piecewise.  Note that agreeing slopes and continuity are not
    enough: the restriction counts as affine only when its image is again a
    standard dyadic rectangle, i.e. when it is a prefix substitution.
    """
    if g.dim != r.dim:
        raise ValueError(f"dimension mismatch: {g.dim} vs {r.dim}")
    return affine_extension(restrict(g, r), r)


def is_identity_on(g: Element, r: Rect) -> bool:
    """True iff ``g`` restricted to ``r`` is the trivial substitution."""
    ext = is_affine_on(g, r)
    return ext is not None and ext.is_trivial


def _merge_partner(a: AffinePiece, b: AffinePiece) -> AffinePiece | None:
    """Merge two pieces whose domains and ranges are matching half-pairs.

    Mergeable iff there is one coordinate d where the domains are the two
    halves of a common rectangle (equal elsewhere) and the ranges are the two
    halves of a common rectangle *in the same coordinate and order*; the
    merged substitution then restricts back to both inputs.
    """
    dom_d = ran_d = -1
    for d in range(a.dim):
        ua, ub = a.dom.words[d], b.dom.words[d]
        if ua != ub:
            if dom_d != -1:
                return None
            dom_d = d
            if not (ua[:-1] == ub[:-1] and ua[-1:] == "0" and ub[-1:] == "1"):
                return None
    for d in range(a.dim):
        va, vb = a.ran.words[d], b.ran.words[d]
        if va != vb:
            if ran_d != -1:
                return None
            ran_d = d
            if not (va[:-1] == vb[:-1] and va[-1:] == "0" and vb[-1:] == "1"):
                return None
    if dom_d == -1 or dom_d != ran_d:
        return None
    d = dom_d
    dom = Rect(a.dom.words[:d] + (a.dom.words[d][:-1],) + a.dom.words[d + 1:])
    ran = Rect(a.ran.words[:d] + (a.ran.words[d][:-1],) + a.ran.words[d + 1:])
    return AffinePiece(dom, ran)


def merge_pieces(pieces: Iterable[AffinePiece]) -> tuple[AffinePiece, ...]:
    """Greedily merge sibling piece pairs until none applies (deterministic).

    Works on any piece collection with pairwise-disjoint domains.  For
    dimension 1 each piece has at most one merge partner and the result is
    the unique fully reduced table; for higher dimensions a piece may pair in
    several coordinates, so the deterministic sorted-scan result is reduced
    but not canonical.
    """
    current: dict[tuple[str, ...], AffinePiece] = {
        p.dom.words: p for p in pieces
    }
    changed = True
    while changed:
        changed = False
        for key in sorted(current):
            a = current.get(key)
            if a is None:
                continue
            for d in range(a.dim):
                w = a.dom.words[d]
                if not w.endswith("0"):
                    continue
                sibling_key = key[:d] + (w[:-1] + "1",) + key[d + 1:]
                b = current.get(sibling_key)
                if b is None:
                    continue
                merged = _merge_partner(a, b)
                if merged is None:
                    continue
                del current[key]
                del current[sibling_key]
                current[merged.dom.words] = merged
                changed = True
                break
            if changed:
                break
    return tuple(sorted(current.values(), key=lambda p: p.dom.words))


def simplify(g: Element) -> Element:
    """Equal element with greedily merged pieces (unique reduced form if 1-D)."""
    return Element.from_pieces(merge_pieces(g.pieces))


def support(g: Element) -> tuple[Rect, ...]:
    """Domains of the nontrivial pieces of the reduced table, sorted."""
    return tuple(
        p.dom for p in simplify(g).pieces if not p.is_trivial
    )


def expansion(g: Element, piece_index: int, d: int) -> Element:
    """Replace one piece by its two ``d``-halves on both sides (same map)."""
    if not 0 <= piece_index < len(g.pieces):
        raise ValueError(f"piece index {piece_index} out of range")
    if not 1 <= d <= g.dim:
        raise ValueError(f"coordinate {d} out of range for dimension {g.dim}")
    target = g.pieces[piece_index]
    rest = [p for i, p in enumerate(g.pieces) if i != piece_index]
    i = d - 1
    for bit in "01":
        dom = Rect(
            target.dom.words[:i] + (target.dom.words[i] + bit,) + target.dom.words[i + 1:]
        )
        ran = Rect(
            target.ran.words[:i] + (target.ran.words[i] + bit,) + target.ran.words[i + 1:]
        )
        rest.append(AffinePiece(dom, ran))
    return Element.from_pieces(rest)


def element_depth(g: Element) -> int:
    """Max total depth over the reduced piece table (domains and ranges)."""
    return max(
        max(p.dom.depth, p.ran.depth) for p in simplify(g).pieces
    )


def _random_tree(rng: random.Random, leaves: int, n: int) -> SplitTree:
    if leaves == 1:
        return SplitLeaf()
    left = rng.randint(1, leaves - 1)
    return SplitNode(
        rng.randint(1, n),
        _random_tree(rng, left, n),
        _random_tree(rng, leaves - left, n),
    )


def random_element(n: int, size: int, seed: int | random.Random) -> Element:
    """Deterministic fuzz element: two random split trees and a random pairing."""
    if size < 1:
        raise ValueError("size must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    doms = tree_leaves(_random_tree(rng, size, n), n)
    rans = tree_leaves(_random_tree(rng, size, n), n)
    pairing = list(range(size))
    rng.shuffle(pairing)
    return Element.from_pieces(
        AffinePiece(doms[i], rans[pairing[i]]) for i in range(size)
    )


def element_to_json_dict(g: Element) -> dict:
    """Plain-dict form: ``{"n": 2, "pieces": [{"dom": [...], "ran": [...]}]}``."""
    return {
        "n": g.dim,
        "pieces": [
            {"dom": list(p.dom.words), "ran": list(p.ran.words)}
            for p in g.pieces
        ],
    }


def element_from_json_dict(data: dict) -> Element:
    n = data["n"]
    pieces = [
        AffinePiece(Rect(tuple(p["dom"])), Rect(tuple(p["ran"])))
        for p in data["pieces"]
    ]
    e = Element.from_pieces(pieces)
    if e.dim != n:
        raise ValueError(f"declared dimension {n} != piece dimension {e.dim}")
    return e


def element_to_json(g: Element) -> str:
    """Canonical JSON text (sorted pieces, fixed separators): bit-exact round-trip."""
    return json.dumps(element_to_json_dict(g), sort_keys=True, separators=(",", ":"))


def element_from_json(text: str) -> Element:
    return element_from_json_dict(json.loads(text))
