"""Generator families, the word language, and the machine-checked suites.

Four families of named generators act on the n-cube (piece tables below write
the coordinate-1 word first; unmentioned coordinates carry the empty word):

- ``X[d,i]`` — splits one cell and shifts: for d = 1 the base table is
  (00)->(0), (01)->(10), (1)->(11); for d >= 2 it is (00;e)->(0;e),
  (01;e)->(1;0), (1;e)->(1;1) in coordinates (1, d).
- ``P[i]`` — a 3-cell block rotation in coordinate 1: (00)->(00), (01)->(1),
  (1)->(01).
- ``Pb[i]`` — the half swap in coordinate 1: (0)->(1), (1)->(0).
- ``C[d,i]`` (d >= 2) — a coordinate transfer: (0;e)->(e;0), (1;e)->(e;1).

For i >= 1 each generator acts inside ``[0, 2^-i) x I^(n-1)`` as the affine
copy of its base case and fixes everything else: prefix ``0^i`` to every
coordinate-1 word of the base table and add the fixed cells (1), (01), ...,
(0^(i-1) 1).

The module also provides the word grammar ``X[d,i]^e ...`` with a parser and
formatter, evaluation of words to elements (right factor acts first), the
ten-family relation suite, the conjugation/recovery identities behind the
finite generating set, and the identity-on-rectangle / commutator premises
used by the fixed-point argument for that set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from nvcalc.dyadic_core import Rect, rect_Ir
from nvcalc.element_algebra import (
    AffinePiece,
    Element,
    compose,
    equals,
    identity,
    inverse,
    is_identity_on,
)
from nvcalc.reporting import CheckReport, CheckResult

__all__ = [
    "GenSymbol",
    "Word",
    "corollary_checks",
    "eval_word",
    "format_word",
    "gen_set_S",
    "gen_set_S1",
    "gen_set_S1prime",
    "gen_set_S2",
    "left_quarter",
    "make_C",
    "make_X",
    "make_pi",
    "make_pibar",
    "parse_word",
    "premise_checks",
    "relation_suite",
]


@dataclass(frozen=True)
class GenSymbol:
    """One generator occurrence: kind, indices, and a nonzero exponent."""

    kind: str  # "X", "C", "P", "Pb"
    d: int | None
    i: int
    exp: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("X", "C", "P", "Pb"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind in ("X", "C"):
            if self.d is None:
                raise ValueError(f"{self.kind} symbols need a coordinate index")
        elif self.d is not None:
            raise ValueError(f"{self.kind} symbols take no coordinate index")
        if self.i < 0:
            raise ValueError("generator index must be >= 0")
        if self.exp == 0:
            raise ValueError("exponent must be nonzero")

    def format(self) -> str:
        head = (
            f"{self.kind}[{self.d},{self.i}]"
            if self.d is not None
            else f"{self.kind}[{self.i}]"
        )
        return head if self.exp == 1 else f"{head}^{self.exp}"


@dataclass(frozen=True)
class Word:
    """A formal product of generator symbols; the empty word is the identity."""

    symbols: tuple[GenSymbol, ...] = ()

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[GenSymbol]:
        return iter(self.symbols)


_TERM_RE = re.compile(
    r"^(?:(X|C)\[(\d+),(\d+)\]|(Pb|P)\[(\d+)\])(?:\^(-?\d+))?$"
)


def parse_word(text: str) -> Word:
    """Parse ``"X[1,0]^-1 P[3]"``-style words (terms separated by whitespace).

    Raises ValueError with the character position of the offending term.
    Out-of-range indices for a given dimension are deliberately not checked
    here; they surface when the word is evaluated.
    """
    symbols = []
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        tm = _TERM_RE.match(tok)
        if tm is None:
            raise ValueError(f"syntax error at position {m.start()}: bad term {tok!r}")
        xc_kind, xc_d, xc_i, p_kind, p_i, exp_s = tm.groups()
        exp = int(exp_s) if exp_s is not None else 1
        if exp == 0:
            raise ValueError(
                f"syntax error at position {m.start()}: zero exponent in {tok!r}"
            )
        if xc_kind is not None:
            symbols.append(GenSymbol(xc_kind, int(xc_d), int(xc_i), exp))
        else:
            symbols.append(GenSymbol(p_kind, None, int(p_i), exp))
    return Word(tuple(symbols))


def format_word(word: Word) -> str:
    """Canonical text of a word; inverse of :func:`parse_word`."""
    return " ".join(sym.format() for sym in word.symbols)


def _embed_pieces(
    n: int, table: list[tuple[dict[int, str], dict[int, str]]]
) -> Element:
    """Build an element from sparse {coordinate: word} piece descriptions."""

    def rect(words: dict[int, str]) -> Rect:
        return Rect(tuple(words.get(d, "") for d in range(1, n + 1)))

    return Element.from_pieces(
        AffinePiece(rect(dom), rect(ran)) for dom, ran in table
    )


def _raise_index(
    base: list[tuple[dict[int, str], dict[int, str]]], i: int
) -> list[tuple[dict[int, str], dict[int, str]]]:
    """Index-raising rule: conjugate the base table into [0, 2^-i) x I^(n-1).

    Prefix ``0^i`` to every coordinate-1 word on both sides and add the fixed
    cells (1), (01), ..., (0^(i-1) 1) so the result is again a self-bijection
    that fixes everything outside the left 2^-i slab.
    """
    if i == 0:
        return base
    prefix = "0" * i
    table = [
        (
            {**dom, 1: prefix + dom.get(1, "")},
            {**ran, 1: prefix + ran.get(1, "")},
        )
        for dom, ran in base
    ]
    for j in range(i):
        cell = {1: "0" * j + "1"}
        table.append((cell, cell))
    return table


@lru_cache(maxsize=None)
def make_X(d: int, i: int, n: int) -> Element:
    """The splitting generator ``X[d,i]`` acting on the n-cube."""
    if not 1 <= d <= n:
        raise ValueError(f"X coordinate {d} out of range for dimension {n}")
    if i < 0:
        raise ValueError("index must be >= 0")
    if d == 1:
        base = [
            ({1: "00"}, {1: "0"}),
            ({1: "01"}, {1: "10"}),
            ({1: "1"}, {1: "11"}),
        ]
    else:
        base = [
            ({1: "00", d: ""}, {1: "0", d: ""}),
            ({1: "01", d: ""}, {1: "1", d: "0"}),
            ({1: "1", d: ""}, {1: "1", d: "1"}),
        ]
    return _embed_pieces(n, _raise_index(base, i))


@lru_cache(maxsize=None)
def make_C(d: int, i: int, n: int) -> Element:
    """The coordinate-transfer generator ``C[d,i]`` (needs 2 <= d <= n)."""
    if n < 2 or not 2 <= d <= n:
        raise ValueError(f"C coordinate {d} out of range for dimension {n}")
    if i < 0:
        raise ValueError("index must be >= 0")
    base = [
        ({1: "0", d: ""}, {1: "", d: "0"}),
        ({1: "1", d: ""}, {1: "", d: "1"}),
    ]
    return _embed_pieces(n, _raise_index(base, i))


@lru_cache(maxsize=None)
def make_pi(i: int, n: int) -> Element:
    """The block-rotation generator ``P[i]``."""
    if i < 0:
        raise ValueError("index must be >= 0")
    base = [
        ({1: "00"}, {1: "00"}),
        ({1: "01"}, {1: "1"}),
        ({1: "1"}, {1: "01"}),
    ]
    return _embed_pieces(n, _raise_index(base, i))


@lru_cache(maxsize=None)
def make_pibar(i: int, n: int) -> Element:
    """The half-swap generator ``Pb[i]``."""
    if i < 0:
        raise ValueError("index must be >= 0")
    base = [
        ({1: "0"}, {1: "1"}),
        ({1: "1"}, {1: "0"}),
    ]
    return _embed_pieces(n, _raise_index(base, i))


def _symbol_element(sym: GenSymbol, n: int) -> Element:
    if sym.kind == "X":
        e = make_X(sym.d, sym.i, n)
    elif sym.kind == "C":
        e = make_C(sym.d, sym.i, n)
    elif sym.kind == "P":
        e = make_pi(sym.i, n)
    else:
        e = make_pibar(sym.i, n)
    if sym.exp < 0:
        e = inverse(e)
    return e


def eval_word(word: Word | str, n: int) -> Element:
    """Evaluate a word to an element; the right factor acts first."""
    if isinstance(word, str):
        word = parse_word(word)
    acc = identity(n)
    for sym in word.symbols:
        e = _symbol_element(sym, n)
        for _ in range(abs(sym.exp)):
            acc = compose(acc, e)
    return acc


def _words_equal(lhs: str, rhs: str, n: int) -> bool:
    return equals(eval_word(lhs, n), eval_word(rhs, n))


def relation_suite(n: int, i_max: int = 3) -> CheckReport:
    """Instantiate and check the ten defining relation families.

    Every admissible combination of coordinates and indices up to ``i_max``
    is checked by exact element equality; families involving ``C`` are
    skipped when n = 1.  The side conditions are part of each family's
    definition and are instantiated exactly as stated.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if i_max < 3:
        raise ValueError("i_max must be >= 3 to reach every family")
    report = CheckReport("relation_suite", n, {"i_max": i_max})
    ds = range(1, n + 1)
    dps = range(2, n + 1)
    idx = range(0, i_max + 1)

    def add(section: str, lhs: str, rhs: str) -> None:
        report.checks.append(
            CheckResult(section, f"{lhs} = {rhs}", _words_equal(lhs, rhs, n))
        )

    for i in idx:
        for j in idx:
            if not i < j:
                continue
            for d in ds:
                for d2 in ds:
                    add("XX_shift", f"X[{d2},{j}] X[{d},{i}]", f"X[{d},{i}] X[{d2},{j+1}]")
                for d2 in dps:
                    add("CX_shift", f"C[{d2},{j}] X[{d},{i}]", f"X[{d},{i}] C[{d2},{j+1}]")
                for y in ("P", "Pb"):
                    add("YX_shift", f"{y}[{j}] X[{d},{i}]", f"X[{d},{i}] {y}[{j+1}]")
    for j in idx:
        for i in idx:
            if not i > j + 1:
                continue
            for d in ds:
                add("PX_commute", f"P[{j}] X[{d},{i}]", f"X[{d},{i}] P[{j}]")
            for d2 in dps:
                add("PC_commute", f"P[{j}] C[{d2},{i}]", f"C[{d2},{i}] P[{j}]")
    for j in idx:
        for i in idx:
            if abs(i - j) > 2:
                add("PP_commute", f"P[{j}] P[{i}]", f"P[{i}] P[{j}]")
    for j in idx:
        for i in idx:
            if j > i + 1:
                add("PbP_commute", f"Pb[{j}] P[{i}]", f"P[{i}] Pb[{j}]")
    for i in idx:
        add("PbX_braid", f"Pb[{i}] X[1,{i}]", f"P[{i}] Pb[{i+1}]")
        for d2 in dps:
            add("CX_braid", f"C[{d2},{i}] X[1,{i}]", f"X[{d2},{i}] C[{d2},{i+2}] P[{i+1}]")
        for d in ds:
            add("PX_braid", f"P[{i}] X[{d},{i}]", f"X[{d},{i+1}] P[{i}] P[{i+1}]")
    return report


def corollary_checks(n: int, i_max: int = 4) -> CheckReport:
    """Conjugation identities raising indices, and the two recoveries.

    Checks that every higher-index generator is the stated conjugate of a
    low-index one, and that ``Pb[0]`` and ``C[d',0]`` are recovered as words
    over the finite generating set S (via the rearranged braid relations).
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    report = CheckReport("corollary_checks", n, {"i_max": i_max})

    def add(section: str, lhs: str, rhs: str) -> None:
        report.checks.append(
            CheckResult(section, f"{lhs} = {rhs}", _words_equal(lhs, rhs, n))
        )

    for d in range(1, n + 1):
        for i in range(2, i_max + 1):
            k = i - 1
            add(
                "X_conjugation",
                f"X[{d},{i}]",
                f"X[{d},0]^-{k} X[{d},1] X[{d},0]^{k}",
            )
    for y in ("P", "Pb"):
        for d in range(1, n + 1):
            for i in (1, 2, 4, 5):
                if i > i_max + 1:
                    continue
                k = i - 3
                exp = f"^{-k}" if -k != 1 else ""
                exp2 = f"^{k}" if k != 1 else ""
                add(
                    f"{y}_conjugation",
                    f"{y}[{i}]",
                    f"X[{d},0]{exp} {y}[3] X[{d},0]{exp2}",
                )
    for dp in range(2, n + 1):
        for d in range(1, n + 1):
            for i in (1, 3, 4):
                if i > i_max:
                    continue
                k = i - 2
                exp = f"^{-k}" if -k != 1 else ""
                exp2 = f"^{k}" if k != 1 else ""
                add(
                    "C_conjugation",
                    f"C[{dp},{i}]",
                    f"X[{d},0]{exp} C[{dp},2] X[{d},0]{exp2}",
                )
    add("Pb0_recovery", "Pb[0]", "P[0] Pb[1] X[1,0]^-1")
    add("Pb0_recovery", "Pb[0]", "P[0] X[1,0]^2 Pb[3] X[1,0]^-3")
    for dp in range(2, n + 1):
        add("C0_recovery", f"C[{dp},0]", f"X[{dp},0] C[{dp},2] P[1] X[1,0]^-1")
        add(
            "C0_recovery",
            f"C[{dp},0]",
            f"X[{dp},0] C[{dp},2] X[1,0]^2 P[3] X[1,0]^-3",
        )
    return report


def left_quarter(n: int) -> Rect:
    """The rectangle ``[0, 1/4) x I^(n-1)``."""
    return Rect(("00",) + ("",) * (n - 1))


def gen_set_S1(n: int) -> list[tuple[str, Element]]:
    """Finite set S1: generators acting as the identity on the right half."""
    out = [(f"X[{d},1]", make_X(d, 1, n)) for d in range(1, n + 1)]
    out += [(f"C[{d},2]", make_C(d, 2, n)) for d in range(2, n + 1)]
    out += [("P[3]", make_pi(3, n)), ("Pb[3]", make_pibar(3, n))]
    return out


def gen_set_S1prime(n: int) -> list[tuple[str, Element]]:
    """S1 without the X generators."""
    out = [(f"C[{d},2]", make_C(d, 2, n)) for d in range(2, n + 1)]
    out += [("P[3]", make_pi(3, n)), ("Pb[3]", make_pibar(3, n))]
    return out


def gen_set_S2(n: int) -> list[tuple[str, Element]]:
    """Finite set S2: generators acting as the identity on the left quarter."""
    out = [
        (f"X[{d},1] X[{d},0]^-1", eval_word(f"X[{d},1] X[{d},0]^-1", n))
        for d in range(1, n + 1)
    ]
    out.append(("P[0]", make_pi(0, n)))
    return out


def gen_set_S(n: int) -> list[tuple[str, Element]]:
    """The finite generating set S = S1 ∪ S2 (P[0] and the X-quotients included)."""
    seen = {}
    for label, e in gen_set_S1(n) + gen_set_S2(n):
        seen.setdefault(label, e)
    return list(seen.items())


def premise_checks(n: int) -> CheckReport:
    """Identity-on-rectangle and commutator premises for the set S.

    Asserted checks: (a) S1 elements are the identity on the right half;
    (b) S2 elements are the identity on the left quarter; (c) each
    ``X[d,1] X[d,0]^-1`` commutes with every Z in S1'; (d) ``P[0]`` commutes
    with every Z in S1'.

    The pairs (``P[0]``, ``X[d,1]``) genuinely do not commute — the defining
    relations only make ``P[j]`` and ``X[d,i]`` commute for i > j+1 — so
    those pairs are computed and reported as findings, never asserted.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    report = CheckReport("premise_checks", n)
    right_half = rect_Ir(n)
    quarter = left_quarter(n)
    for label, e in gen_set_S1(n):
        report.checks.append(
            CheckResult(
                "identity_on_right_half",
                f"{label} fixes [1/2,1) x I^(n-1)",
                is_identity_on(e, right_half),
            )
        )
    for label, e in gen_set_S2(n):
        report.checks.append(
            CheckResult(
                "identity_on_left_quarter",
                f"{label} fixes [0,1/4) x I^(n-1)",
                is_identity_on(e, quarter),
            )
        )
    s1p = gen_set_S1prime(n)
    for d in range(1, n + 1):
        w_label = f"X[{d},1] X[{d},0]^-1"
        w = eval_word(w_label, n)
        for z_label, z in s1p:
            report.checks.append(
                CheckResult(
                    "commutators_with_X_quotient",
                    f"[{w_label}, {z_label}] = 1",
                    equals(compose(w, z), compose(z, w)),
                )
            )
    p0 = make_pi(0, n)
    for z_label, z in gen_set_S1(n):
        commutes = equals(compose(p0, z), compose(z, p0))
        in_s1prime = not z_label.startswith("X")
        if in_s1prime:
            report.checks.append(
                CheckResult(
                    "commutators_with_P0", f"[P[0], {z_label}] = 1", commutes
                )
            )
        else:
            report.checks.append(
                CheckResult(
                    "commutators_with_P0",
                    f"[P[0], {z_label}] = 1",
                    commutes,
                    asserted=False,
                    note=(
                        "observed non-commutation, as the defining relations "
                        "predict (P[j] and X[d,i] commute only for i > j+1); "
                        "recorded as data"
                    ),
                )
            )
    return report
