"""Coset combinatorics on the left half-cube and the truncated end cocycle.

Let H be the subgroup of elements acting as the identity on the left half
``I_l = [0,1/2) x I^(n-1)``.  A left coset ``kH`` is determined by the
restriction of ``k`` to ``I_l``.  Inside the coset space sits the family

    X = { kH : k restricted to I_l is a single prefix substitution },

and ``kH |-> k(I_l)`` identifies X with the set of proper standard dyadic
rectangles (depth >= 1; the whole cube is impossible, since the right half
must land somewhere disjoint).  Translation by g sends ``kH`` to ``(gk)H``,
so membership questions about ``gX`` reduce to whether g acts as a single
substitution on a given rectangle:

    X - gX  <-> { R proper : g^{-1} is not one substitution on R },
    gX - X  <-> { R proper : g is not one substitution on R }.

Failing rectangles are closed under passing to ancestors (a substitution on
R restricts to one on every sub-rectangle), which yields an exact pruned
breadth-first enumeration of the symmetric difference up to any depth: the
depth-d frontier is precisely the set of failing depth-d rectangles, and an
empty frontier certifies that nothing deeper fails.

The module computes these truncated symmetric differences with a
stabilised/growing verdict, checks the cocycle identity
``pi_gh(c) = pi_g(c) + pi_h(g^{-1} c)`` for ``pi_g = chi_gX - chi_X`` along
independently composed paths, probes the separating point-evaluation maps
attached to an element's domain pattern, and sweeps word balls over the
finite generating set to compare piece counts against a properness bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from nvcalc.dyadic_core import (
    Pattern,
    Point,
    Rect,
    RectRelation,
    corner_projections,
    corners,
    enumerate_rects,
    rect_Il,
    rect_Ir,
    rect_intersect,
    rect_relation,
)
from nvcalc.element_algebra import (
    AffinePiece,
    Element,
    affine_extension,
    apply,
    compose,
    element_depth,
    equals,
    identity,
    inverse,
    is_affine_on,
    is_identity_on,
    merge_pieces,
    random_element,
    restrict,
    simplify,
)
from nvcalc.reporting import CheckReport, CheckResult
from nvcalc.words_generators import gen_set_S, make_X

__all__ = [
    "CosetRep",
    "FPProbeResult",
    "GridViolation",
    "TruncatedCocycle",
    "XMember",
    "alpha_points",
    "cocycle_identity_check",
    "complement_partition",
    "coset_eq",
    "coset_of",
    "coset_translate",
    "embed_in_half",
    "f_P_probe",
    "in_H",
    "in_X",
    "in_gX",
    "normalizer_commutation_check",
    "properness_bound_check",
    "rect_to_coset",
    "sym_diff_truncated",
]


@dataclass(frozen=True)
class CosetRep:
    """A left coset kH, carried as the restriction of k to I_l plus k itself.

    ``restriction`` (the merged piece table of k on I_l) determines the coset;
    ``rep`` is kept so the coset can be translated exactly.
    """

    n: int
    restriction: tuple[AffinePiece, ...]
    rep: Element


@dataclass(frozen=True)
class XMember:
    """A coset in the family X, named by the rectangle k(I_l)."""

    rect: Rect


def coset_of(k: Element) -> CosetRep:
    """The coset kH of an element."""
    return CosetRep(k.dim, merge_pieces(restrict(k, rect_Il(k.dim))), k)


def _as_coset(c: CosetRep | Element) -> CosetRep:
    return c if isinstance(c, CosetRep) else coset_of(c)


def coset_eq(a: CosetRep | Element, b: CosetRep | Element) -> bool:
    """Whether two cosets agree, i.e. the representatives agree on I_l."""
    a, b = _as_coset(a), _as_coset(b)
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    for p in a.restriction:
        for q in b.restriction:
            m = rect_intersect(p.dom, q.dom)
            if m is None:
                continue
            if p.image_of(m) != q.image_of(m):
                return False
    return True


def coset_translate(g: Element, c: CosetRep | Element) -> CosetRep:
    """The translated coset g . kH = (g k)H."""
    c = _as_coset(c)
    return coset_of(compose(g, c.rep))


def in_H(k: Element | CosetRep) -> bool:
    """Whether kH is the trivial coset, i.e. k fixes I_l pointwise."""
    if isinstance(k, CosetRep):
        return all(p.is_trivial for p in k.restriction)
    return is_identity_on(k, rect_Il(k.dim))


def in_X(c: CosetRep | Element) -> XMember | None:
    """The X-membership certificate of a coset, or None.

    Returns ``XMember(k(I_l))`` when the representative is a single prefix
    substitution on I_l.
    """
    c = _as_coset(c)
    ext = affine_extension(c.restriction, rect_Il(c.n))
    return None if ext is None else XMember(ext.ran)


def in_gX(g: Element, c: CosetRep | Element) -> XMember | None:
    """The X-certificate of g^{-1}.c, i.e. whether c lies in the translate gX."""
    return in_X(coset_translate(inverse(g), c))


def complement_partition(r: Rect) -> tuple[Rect, ...]:
    """Partition of the cube minus ``r`` into ``r.depth`` rectangles.

    Peels one sibling per letter: for each coordinate d in order and each
    proper prefix p of the coordinate word, emit the rectangle that pins
    coordinates before d to their full words, coordinate d to p with the next
    letter flipped, and later coordinates to the whole interval.
    """
    out: list[Rect] = []
    for d, w in enumerate(r.words):
        for k in range(len(w)):
            flipped = w[:k] + ("1" if w[k] == "0" else "0")
            words = r.words[:d] + (flipped,) + ("",) * (r.dim - d - 1)
            out.append(Rect(words))
    return tuple(out)


def rect_to_coset(r: Rect) -> Element:
    """A witness element k with k(I_l) = ``r`` (so kH is the X-coset of r).

    Builds the canonical representative: I_l is sent onto ``r`` by one
    substitution, and the right half is cut into ``r.depth`` staircase cells
    ``10, 110, ..., 1^(m-1)0, 1^m`` (coordinate 1) matched in order with the
    complement partition of ``r``.
    """
    if r.depth == 0:
        raise ValueError("the whole cube is not the image of I_l under any element")
    n = r.dim
    comps = complement_partition(r)
    m = len(comps)
    pieces = [AffinePiece(rect_Il(n), r)]
    for j, target in enumerate(comps, start=1):
        word1 = "1" * j + ("0" if j < m else "")
        pieces.append(AffinePiece(Rect((word1,) + ("",) * (n - 1)), target))
    return Element.from_pieces(pieces)


def _children(r: Rect) -> list[Rect]:
    out = []
    for d in range(r.dim):
        for bit in ("0", "1"):
            out.append(Rect(r.words[:d] + (r.words[d] + bit,) + r.words[d + 1:]))
    return out


def _failing_rects(g: Element, depth: int) -> list[Rect]:
    """All rectangles of depth <= ``depth`` on which g is not one substitution.

    Pruned breadth-first search.  Invariant: the surviving frontier at depth d
    is exactly the set of failing depth-d rectangles, since every failing
    rectangle has a failing parent (a substitution on a rectangle restricts
    to one on each child).  An empty frontier proves no deeper rectangle
    fails, so early termination is exact, not a heuristic.
    """
    failing: list[Rect] = []
    frontier = [Rect.cube(g.dim)]
    d = 0
    while frontier and d <= depth:
        frontier = [r for r in frontier if is_affine_on(g, r) is None]
        failing.extend(frontier)
        d += 1
        if d > depth:
            break
        frontier = sorted({c for r in frontier for c in _children(r)})
    return failing


_GROWING_FINDING = (
    "open finding: cumulative member counts are still increasing at "
    "truncation depth {depth}. If the translate of the coset family by this "
    "element differed from the family in only finitely many cosets (almost "
    "invariance), the counts would plateau below the truncation depth; no "
    "plateau is visible here. This is recorded as an observation about the "
    "truncation, not as a check failure, and says nothing about depths "
    "beyond the truncation."
)


@dataclass(frozen=True)
class TruncatedCocycle:
    """The symmetric difference X Δ gX enumerated up to a rectangle depth.

    ``out_side`` lists X - gX (cosets named by their rectangles); ``in_side``
    lists the rectangles R whose g-translates make up gX - X.  ``counts[d]``
    is the number of members of depth <= d on both sides together, so
    ``counts[depth] == total``.  ``norm`` is the Euclidean norm of the
    truncated difference indicator, i.e. sqrt(total).  The verdict is
    ``STABLE(k)`` with k the least depth whose cumulative count already
    equals the count at the truncation depth (when that happens strictly
    before the truncation depth), and ``GROWING`` when new members still
    appear at the last level searched.  A GROWING verdict is a statement
    about this truncation only, never a claim about the untruncated
    symmetric difference; ``open_finding`` spells that out, flagging the
    tension with the expectation that every translate of the coset family
    differs from it in only finitely many cosets.
    """

    element: Element
    depth: int
    out_side: tuple[XMember, ...]
    in_side: tuple[Rect, ...]
    counts: tuple[int, ...]
    verdict: str
    stable_depth: int | None
    total: int
    norm: float
    open_finding: str | None = None

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "out_side": [list(m.rect.words) for m in self.out_side],
            "in_side": [list(r.words) for r in self.in_side],
            "counts_by_depth": list(self.counts),
            "verdict": self.verdict,
            "stable_depth": self.stable_depth,
            "total": self.total,
            "norm": self.norm,
            "open_finding": self.open_finding,
        }


def sym_diff_truncated(g: Element, depth: int) -> TruncatedCocycle:
    """Enumerate X Δ gX over rectangles of depth <= ``depth``.

    A member of X - gX is a proper rectangle on which g^{-1} is not one
    substitution; a member of gX - X is the g-translate of the coset of a
    proper rectangle on which g is not one substitution.  The whole cube
    (depth 0) is excluded: it never names a coset in X.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    out_rects = [r for r in _failing_rects(inverse(g), depth) if r.depth >= 1]
    in_rects = [r for r in _failing_rects(g, depth) if r.depth >= 1]
    members = out_rects + in_rects
    counts = tuple(
        sum(1 for r in members if r.depth <= d) for d in range(depth + 1)
    )
    total = counts[-1]
    d_star = next(d for d in range(depth + 1) if counts[d] == total)
    if d_star < depth:
        verdict = f"STABLE({d_star})"
        stable_depth: int | None = d_star
        finding = None
    else:
        verdict = "GROWING"
        stable_depth = None
        finding = _GROWING_FINDING.format(depth=depth)

    def key(r: Rect) -> tuple:
        return (r.depth, r.words)

    return TruncatedCocycle(
        element=g,
        depth=depth,
        out_side=tuple(XMember(r) for r in sorted(out_rects, key=key)),
        in_side=tuple(sorted(in_rects, key=key)),
        counts=counts,
        verdict=verdict,
        stable_depth=stable_depth,
        total=total,
        norm=math.sqrt(total),
        open_finding=finding,
    )


def cocycle_identity_check(
    g: Element, h: Element, depth: int = 2
) -> CheckReport:
    """Check ``pi_gh(c) = pi_g(c) + pi_h(g^{-1} c)`` on a family of cosets.

    ``pi_g(c) = [c in gX] - [c in X]``.  The left side translates by the
    single composed element (gh)^{-1}; the right side translates stepwise by
    g^{-1} and then h^{-1}, so the two sides follow genuinely different
    computation paths through the group arithmetic.  Test cosets: every
    proper rectangle of depth <= ``depth`` plus its g- and gh-translates.
    """
    if g.dim != h.dim:
        raise ValueError(f"dimension mismatch: {g.dim} vs {h.dim}")
    n = g.dim
    gh = compose(g, h)
    gh_inv = inverse(gh)
    g_inv = inverse(g)
    h_inv = inverse(h)
    report = CheckReport("cocycle_identity", n, {"depth": depth})

    def chi(member: XMember | None) -> int:
        return 0 if member is None else 1

    for r in enumerate_rects(n, depth):
        if r.depth == 0:
            continue
        base = coset_of(rect_to_coset(r))
        name = ",".join(w or "e" for w in r.words)
        for label, c in (
            (f"R[{name}]", base),
            (f"g.R[{name}]", coset_translate(g, base)),
            (f"gh.R[{name}]", coset_translate(gh, base)),
        ):
            lhs = chi(in_X(coset_translate(gh_inv, c))) - chi(in_X(c))
            g_shift = coset_translate(g_inv, c)
            rhs = (
                chi(in_X(g_shift))
                - chi(in_X(c))
                + chi(in_X(coset_translate(h_inv, g_shift)))
                - chi(in_X(g_shift))
            )
            report.checks.append(
                CheckResult(
                    "cocycle_identity",
                    f"pi_gh = pi_g + g.pi_h at {label}",
                    lhs == rhs,
                )
            )
    return report


def alpha_points(n: int) -> tuple[Point, ...]:
    """The probe points: (1/4, 0, ..., 0) and, per later coordinate i, the
    point with 1/2 in slot i and 0 elsewhere.  All lie in I_l."""
    pts = [
        tuple(Fraction(1, 4) if d == 0 else Fraction(0) for d in range(n))
    ]
    for i in range(1, n):
        pts.append(
            tuple(Fraction(1, 2) if d == i else Fraction(0) for d in range(n))
        )
    return tuple(pts)


@dataclass(frozen=True)
class GridViolation:
    """One probe value falling off the corner grid of the pattern."""

    rect: Rect
    alpha_index: int  # 1-based probe point index
    coord: int  # 1-based coordinate
    value: Fraction


@dataclass(frozen=True)
class FPProbeResult:
    """Separating-map probe attached to an element's domain pattern P.

    ``members`` are the proper rectangles of depth <= depth that are not
    contained in any single cell of P (the membership test used throughout);
    ``members_corner_meets`` is the companion predicate — rectangles whose
    closure (or half-open extent, per ``corner_mode``) meets a corner of P —
    kept side by side for comparison.  For each member R, ``values[R]`` lists
    the images of the probe points under the canonical representative of the
    coset named by R; ``grid_violations`` records every value coordinate that
    misses the corresponding corner-projection grid of P; ``injective`` says
    whether the full value tuple separates the members.
    """

    n: int
    depth: int
    corner_mode: str
    pattern: Pattern
    members: tuple[Rect, ...]
    members_corner_meets: tuple[Rect, ...]
    values: dict[Rect, tuple[Point, ...]] = field(compare=False)
    grid_violations: tuple[GridViolation, ...] = ()
    injective: bool = True

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "corner_mode": self.corner_mode,
            "pattern": [list(r.words) for r in self.pattern],
            "members": [list(r.words) for r in self.members],
            "members_corner_meets": [
                list(r.words) for r in self.members_corner_meets
            ],
            "values": [
                {
                    "rect": list(r.words),
                    "points": [
                        [str(x) for x in p] for p in self.values[r]
                    ],
                }
                for r in self.members
            ],
            "grid_violations": [
                {
                    "rect": list(v.rect.words),
                    "alpha_index": v.alpha_index,
                    "coord": v.coord,
                    "value": str(v.value),
                }
                for v in self.grid_violations
            ],
            "injective": self.injective,
        }


def _closure_contains(r: Rect, p: Point, half_open: bool) -> bool:
    for (lo, hi), x in zip(r.intervals(), p):
        if half_open:
            if not lo <= x < hi:
                return False
        else:
            if not lo <= x <= hi:
                return False
    return True


def f_P_probe(
    g: Element, depth: int, corner_mode: str = "closed"
) -> FPProbeResult:
    """Probe the point-evaluation maps attached to g's domain pattern.

    ``corner_mode`` is "closed" (corners may lie on the boundary of a member
    rectangle) or "half_open" (members must contain the corner in the
    half-open sense); it only affects the companion corner-meets member list.
    """
    if corner_mode not in ("closed", "half_open"):
        raise ValueError(f"unknown corner mode {corner_mode!r}")
    n = g.dim
    pattern = simplify(g).domain_pattern()
    cells = list(pattern)
    corner_set = corners(pattern)
    grids = corner_projections(pattern)
    alphas = alpha_points(n)

    members: list[Rect] = []
    corner_members: list[Rect] = []
    for r in enumerate_rects(n, depth):
        if r.depth == 0:
            continue
        inside_one_cell = any(
            rect_relation(r, cell)
            in (RectRelation.EQUAL, RectRelation.B_CONTAINS_A)
            for cell in cells
        )
        if not inside_one_cell:
            members.append(r)
        if any(
            _closure_contains(r, q, corner_mode == "half_open")
            for q in corner_set
        ):
            corner_members.append(r)

    values: dict[Rect, tuple[Point, ...]] = {}
    violations: list[GridViolation] = []
    for r in members:
        k = rect_to_coset(r)
        imgs = tuple(apply(k, a) for a in alphas)
        values[r] = imgs
        for ai, img in enumerate(imgs, start=1):
            for d in range(n):
                if img[d] not in grids[d]:
                    violations.append(
                        GridViolation(r, ai, d + 1, img[d])
                    )
    injective = len(set(values.values())) == len(members)
    return FPProbeResult(
        n=n,
        depth=depth,
        corner_mode=corner_mode,
        pattern=pattern,
        members=tuple(members),
        members_corner_meets=tuple(corner_members),
        values=values,
        grid_violations=tuple(violations),
        injective=injective,
    )


def _ball_elements(
    n: int, radius: int
) -> list[tuple[str, Element]]:
    """Distinct elements of the word ball of the given radius over S and
    inverses, labelled by a shortest word reaching each; includes the
    identity (empty word)."""
    letters: list[tuple[str, Element]] = []
    for label, e in gen_set_S(n):
        letters.append((label, e))
        letters.append((f"({label})^-1", inverse(e)))

    def key(e: Element) -> tuple:
        return tuple((p.dom.words, p.ran.words) for p in simplify(e).pieces)

    ident = identity(n)
    seen: dict[tuple, tuple[str, Element]] = {key(ident): ("", ident)}
    frontier: list[tuple[str, Element]] = [("", ident)]
    for _ in range(radius):
        nxt: list[tuple[str, Element]] = []
        for label, e in frontier:
            for l_label, l_elem in letters:
                new = compose(e, l_elem)
                k = key(new)
                if k in seen:
                    continue
                new_label = f"{label} {l_label}".strip()
                seen[k] = (new_label, new)
                nxt.append((new_label, new))
        frontier = nxt
    return list(seen.values())


def properness_bound_check(
    n: int, ball_radius: int, depth: int | None = None
) -> CheckReport:
    """Piece-count bound over a word ball of the finite generating set.

    For every distinct element g in the ball of the given radius over S and
    inverses, enumerate X Δ gX.  With ``depth=None`` each element is
    truncated adaptively at its own reduced table depth plus one (empirically
    the exact stabilization threshold in dimension 1); an integer fixes one
    truncation depth for all.  When the truncation stabilises with total m
    (the squared norm of the cocycle value), assert that the reduced piece
    table of g has at most (m + 4)^n cells — a small symmetric difference
    forces a coarse element, the quantitative heart of properness of the
    coset action.  Elements whose truncation is still growing are reported
    as findings, never asserted either way.
    """
    report = CheckReport(
        "properness_bound",
        n,
        {
            "ball_radius": ball_radius,
            "depth": "adaptive" if depth is None else depth,
        },
    )
    elements = _ball_elements(n, ball_radius)
    stable = growing = 0
    for label, g in elements:
        d = depth if depth is not None else element_depth(g) + 1
        t = sym_diff_truncated(g, d)
        pieces = len(simplify(g).pieces)
        bound = (t.total + 4) ** n
        word = label or "<empty>"
        if t.stable_depth is not None:
            stable += 1
            report.checks.append(
                CheckResult(
                    "piece_bound",
                    f"{word}: pieces {pieces} <= ({t.total}+4)^{n} = {bound}",
                    pieces <= bound,
                )
            )
        else:
            growing += 1
            report.checks.append(
                CheckResult(
                    "piece_bound",
                    f"{word}: truncation still growing at depth {d} "
                    f"(total so far {t.total}, pieces {pieces})",
                    True,
                    asserted=False,
                    note="no bound claimed for a growing truncation",
                )
            )
    report.params["num_elements"] = len(elements)
    report.params["num_stable"] = stable
    report.params["num_growing"] = growing
    return report


def embed_in_half(e: Element, side: str) -> Element:
    """Copy of e acting inside one coordinate-1 half and fixing the other.

    ``side`` is "left" or "right"; the copy prefixes the half's letter to
    every coordinate-1 domain and range word and a single identity piece
    covers the other half.
    """
    if side not in ("left", "right"):
        raise ValueError(f"unknown side {side!r}")
    bit, other = ("0", rect_Ir(e.dim)) if side == "left" else ("1", rect_Il(e.dim))
    pieces = [
        AffinePiece(
            Rect((bit + p.dom.words[0],) + p.dom.words[1:]),
            Rect((bit + p.ran.words[0],) + p.ran.words[1:]),
        )
        for p in e.pieces
    ]
    pieces.append(AffinePiece(other, other))
    return Element.from_pieces(pieces)


def normalizer_commutation_check(
    n: int, samples: int = 5, seed: int = 0
) -> CheckReport:
    """Sanity checks for the half-cube subgroup H used by the coset space.

    Random elements embedded into opposite halves must commute; every
    right-half embedding lies in H; and conjugating a right-half element by
    a generator supported on the left half (``X[1,1]``) stays in H — checked
    on random samples and on the fixed witness swapping the two quarters of
    the right half.
    """
    report = CheckReport(
        "normalizer_commutation", n, {"samples": samples, "seed": seed}
    )
    x11 = make_X(1, 1, n)
    x11_inv = inverse(x11)

    def run_case(tag: str, left_src: Element, right_src: Element) -> None:
        a = embed_in_half(left_src, "left")
        b = embed_in_half(right_src, "right")
        report.checks.append(
            CheckResult(
                "disjoint_supports_commute",
                f"{tag}: left and right embeddings commute",
                equals(compose(a, b), compose(b, a)),
            )
        )
        report.checks.append(
            CheckResult(
                "right_embedding_in_H",
                f"{tag}: right embedding fixes I_l",
                in_H(b),
            )
        )
        conj = compose(compose(x11_inv, b), x11)
        report.checks.append(
            CheckResult(
                "conjugation_preserves_H",
                f"{tag}: X[1,1]^-1 h X[1,1] stays in H",
                in_H(conj) and equals(conj, b),
            )
        )

    swap = Element.from_pieces(
        [
            AffinePiece(
                Rect(("0",) + ("",) * (n - 1)), Rect(("1",) + ("",) * (n - 1))
            ),
            AffinePiece(
                Rect(("1",) + ("",) * (n - 1)), Rect(("0",) + ("",) * (n - 1))
            ),
        ]
    )
    run_case("witness(half-swap)", swap, swap)
    for s in range(samples):
        a = random_element(n, 4, seed * 1000 + 2 * s)
        b = random_element(n, 4, seed * 1000 + 2 * s + 1)
        run_case(f"sample{s}", a, b)
    return report
