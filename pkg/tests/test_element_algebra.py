"""Unit tests for the piecewise prefix-substitution group arithmetic."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nvcalc.dyadic_core import Rect, is_partition, rect_Il, rect_Ir
from nvcalc.element_algebra import (
    AffinePiece,
    Element,
    affine_extension,
    apply,
    compose,
    element_depth,
    element_from_json,
    element_from_json_dict,
    element_to_json,
    element_to_json_dict,
    equals,
    expansion,
    identity,
    inverse,
    is_affine_on,
    is_identity,
    is_identity_on,
    merge_pieces,
    random_element,
    restrict,
    simplify,
    support,
    validate,
)

F = Fraction


def elem(*pairs):
    """Build a 1-D element from (domain word, range word) pairs."""
    return Element.from_pieces(
        AffinePiece(Rect((a,)), Rect((b,))) for a, b in pairs
    )


X = elem(("00", "0"), ("01", "10"), ("1", "11"))
PIBAR = elem(("0", "1"), ("1", "0"))
# translation by 1/4 on the circle: affine on [0,1/2) but never one substitution
SHIFT_QUARTER = elem(("00", "01"), ("01", "10"), ("10", "11"), ("11", "00"))


# ---------------------------------------------------------------------------
# AffinePiece


def test_piece_basic_properties():
    p = AffinePiece(Rect(("00", "")), Rect(("0", "1")))
    assert p.dim == 2
    assert not p.is_trivial
    assert p.slope_exponents() == (1, -1)
    assert AffinePiece(Rect(("01",)), Rect(("01",))).is_trivial
    with pytest.raises(ValueError):
        AffinePiece(Rect(("0",)), Rect(("0", "")))


def test_piece_apply_point():
    p = AffinePiece(Rect(("00",)), Rect(("1",)))
    assert p.apply_point((F(0),)) == (F(1, 2),)
    assert p.apply_point((F(1, 8),)) == (F(3, 4),)
    with pytest.raises(ValueError):
        p.apply_point((F(1, 2),))


def test_piece_image_and_restrict():
    p = AffinePiece(Rect(("0", "")), Rect(("", "1")))
    assert p.image_of(Rect(("01", "0"))) == Rect(("1", "10"))
    q = p.restrict_to(Rect(("01", "0")))
    assert q.dom == Rect(("01", "0")) and q.ran == Rect(("1", "10"))
    assert p.inverted().image_of(Rect(("1", "10"))) == Rect(("01", "0"))
    with pytest.raises(ValueError):
        p.image_of(Rect(("1", "")))


# ---------------------------------------------------------------------------
# Element construction and validation


def test_from_pieces_sorts_and_validates_dimension():
    g = elem(("1", "11"), ("00", "0"), ("01", "10"))
    assert [p.dom.words for p in g.pieces] == [("00",), ("01",), ("1",)]
    with pytest.raises(ValueError):
        Element.from_pieces([])
    with pytest.raises(ValueError):
        Element.from_pieces(
            [
                AffinePiece(Rect(("0",)), Rect(("0",))),
                AffinePiece(Rect(("1", "")), Rect(("1", ""))),
            ]
        )


def test_validate():
    assert validate(identity(2))
    assert validate(X)
    # ranges collide -> not a bijection
    bad = elem(("0", "0"), ("1", "0"))
    assert not validate(bad)
    # domains leave a hole
    bad2 = Element.from_pieces([AffinePiece(Rect(("0",)), Rect(("0",)))])
    assert not validate(bad2)


def test_domain_and_range_patterns():
    assert [r.words for r in X.domain_pattern()] == [("00",), ("01",), ("1",)]
    assert [r.words for r in X.range_pattern()] == [("0",), ("10",), ("11",)]


# ---------------------------------------------------------------------------
# group operations


def test_compose_applies_right_factor_first():
    # (X∘PIBAR)(x) = X(PIBAR(x))
    p = (F(5, 8),)
    assert apply(compose(X, PIBAR), p) == apply(X, apply(PIBAR, p))
    assert apply(compose(PIBAR, X), p) == apply(PIBAR, apply(X, p))


def test_compose_square_table():
    x2 = simplify(compose(X, X))
    assert [(p.dom.words[0], p.ran.words[0]) for p in x2.pieces] == [
        ("000", "0"),
        ("001", "10"),
        ("01", "110"),
        ("1", "111"),
    ]
    assert len(x2.pieces) == 4


def test_compose_dim_mismatch():
    with pytest.raises(ValueError):
        compose(X, identity(2))


def test_compose_identity_neutral():
    for g in (X, PIBAR, SHIFT_QUARTER):
        assert compose(g, identity(1)) == g
        assert compose(identity(1), g) == g


def test_inverse_and_involution():
    assert is_identity(compose(X, inverse(X)))
    assert is_identity(compose(inverse(X), X))
    assert equals(compose(PIBAR, PIBAR), identity(1))
    assert apply(inverse(X), (F(1, 4),)) == (F(1, 8),)


def test_apply_frozen_values_and_errors():
    assert apply(X, (F(1, 8),)) == (F(1, 4),)
    assert apply(X, (F(5, 8),)) == (F(13, 16),)
    assert apply(PIBAR, (F(0),)) == (F(1, 2),)
    with pytest.raises(ValueError):
        apply(X, (F(1, 8), F(0)))
    with pytest.raises(ValueError):
        apply(X, (F(3, 2),))


def test_equals_is_semantic():
    expanded = expansion(X, 0, 1)
    assert expanded != X  # different piece tables
    assert equals(expanded, X)  # same map
    assert equals(simplify(expanded), X)
    assert not equals(X, PIBAR)
    with pytest.raises(ValueError):
        equals(X, identity(2))


# ---------------------------------------------------------------------------
# restriction, affine extension, local tests


def test_restrict_partitions_the_rectangle():
    for g, r in [
        (X, Rect(("0",))),
        (SHIFT_QUARTER, Rect(("0",))),
        (compose(X, X), Rect(("00",))),
    ]:
        pieces = restrict(g, r)
        doms = [p.dom for p in pieces]
        assert sum(d.volume for d in doms) == r.volume
        for p in pieces:
            sample = tuple(lo for lo, _ in p.dom.intervals())
            assert apply(g, sample) == p.apply_point(sample)


def test_affine_extension_success_and_failure():
    r = Rect(("00",))
    ext = affine_extension(restrict(X, r), r)
    assert ext is not None and ext.dom == r and ext.ran == Rect(("0",))
    half = Rect(("0",))
    # two sub-pieces with different slopes: no single substitution
    assert affine_extension(restrict(X, half), half) is None
    # globally affine on [0,1/2) but image [1/4,3/4) is not a dyadic rectangle
    assert affine_extension(restrict(SHIFT_QUARTER, half), half) is None
    with pytest.raises(ValueError):
        affine_extension(restrict(X, Rect(("1",))), half)


def test_is_affine_on():
    # every reduced piece is recovered exactly
    for g in (X, PIBAR, SHIFT_QUARTER, compose(X, PIBAR)):
        for p in simplify(g).pieces:
            assert is_affine_on(g, p.dom) == p
    assert is_affine_on(SHIFT_QUARTER, Rect(("0",))) is None
    assert is_affine_on(SHIFT_QUARTER, Rect(("00",))) == AffinePiece(
        Rect(("00",)), Rect(("01",))
    )
    assert is_affine_on(X, Rect(("0",))) is None
    assert is_affine_on(X, Rect(("000",))) == AffinePiece(
        Rect(("000",)), Rect(("00",))
    )


def test_is_affine_on_two_dimensional():
    swap2 = Element.from_pieces(
        [
            AffinePiece(Rect(("0", "")), Rect(("1", ""))),
            AffinePiece(Rect(("1", "")), Rect(("0", ""))),
        ]
    )
    got = is_affine_on(swap2, rect_Il(2))
    assert got == AffinePiece(Rect(("0", "")), Rect(("1", "")))
    assert is_affine_on(swap2, Rect(("", "0"))) is None


def test_is_identity_on():
    x_high = Element.from_pieces(
        [
            AffinePiece(Rect(("000",)), Rect(("00",))),
            AffinePiece(Rect(("001",)), Rect(("010",))),
            AffinePiece(Rect(("01",)), Rect(("011",))),
            AffinePiece(Rect(("1",)), Rect(("1",))),
        ]
    )
    assert is_identity_on(x_high, rect_Ir(1))
    assert not is_identity_on(X, rect_Ir(1))
    assert is_identity_on(identity(2), Rect(("01", "1")))


# ---------------------------------------------------------------------------
# simplification, support, expansion


def test_simplify_merges_back_expansions():
    g = X
    for args in [(0, 1), (1, 1), (3, 1)]:
        g = expansion(g, *args)
    assert len(g.pieces) == 6
    assert simplify(g) == X
    assert simplify(simplify(g)) == simplify(g)


def test_simplify_refined_identity():
    g = identity(1)
    g = expansion(g, 0, 1)
    g = expansion(g, 0, 1)
    assert len(g.pieces) == 3
    assert simplify(g) == identity(1)


def test_merge_pieces_handles_multi_level_merges():
    quarters = [
        AffinePiece(Rect((w,)), Rect((w,))) for w in ("00", "01", "10", "11")
    ]
    merged = merge_pieces(quarters)
    assert [p.dom.words for p in merged] == [("",)]


def test_support():
    assert support(identity(2)) == ()
    assert support(PIBAR) == (Rect(("0",)), Rect(("1",)))
    x_high = elem(("000", "00"), ("001", "010"), ("01", "011"), ("1", "1"))
    assert support(x_high) == (Rect(("000",)), Rect(("001",)), Rect(("01",)))
    for r in support(x_high):
        assert r.words[0].startswith("0")


def test_expansion_properties_and_errors():
    e = expansion(X, 2, 1)
    assert len(e.pieces) == len(X.pieces) + 1
    assert equals(e, X)
    with pytest.raises(ValueError):
        expansion(X, 5, 1)
    with pytest.raises(ValueError):
        expansion(X, 0, 2)


def test_element_depth():
    assert element_depth(identity(3)) == 0
    assert element_depth(X) == 2
    assert element_depth(expansion(X, 0, 1)) == 2  # reduced first
    assert element_depth(compose(X, X)) == 3


# ---------------------------------------------------------------------------
# random elements


def test_random_element_deterministic_and_valid():
    a = random_element(2, 5, 42)
    b = random_element(2, 5, 42)
    assert a == b
    assert validate(a)
    assert len(a.pieces) == 5
    assert random_element(2, 5, 43) != a
    with pytest.raises(ValueError):
        random_element(1, 0, 0)


def test_random_element_accepts_shared_rng():
    rng = random.Random(9)
    a = random_element(1, 4, rng)
    b = random_element(1, 4, rng)  # advances the stream
    assert validate(a) and validate(b)
    rng2 = random.Random(9)
    assert random_element(1, 4, rng2) == a
    assert random_element(1, 4, rng2) == b


@given(st.integers(0, 10_000), st.integers(1, 8), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_random_elements_satisfy_group_laws(seed, size, n):
    g = random_element(n, size, seed)
    assert validate(g)
    assert is_identity(compose(g, inverse(g)))
    assert equals(simplify(g), g)


# ---------------------------------------------------------------------------
# serialization


def test_json_dict_roundtrip():
    for g in (X, PIBAR, identity(2), random_element(2, 6, 5)):
        d = element_to_json_dict(g)
        assert element_from_json_dict(d) == g
        assert json.dumps(d)  # plain data


def test_json_text_roundtrip_bit_exact():
    for g in (X, compose(X, PIBAR), random_element(3, 5, 11)):
        text = element_to_json(g)
        again = element_to_json(element_from_json(text))
        assert text == again


def test_json_dimension_cross_check():
    d = element_to_json_dict(X)
    d["n"] = 2
    with pytest.raises(ValueError):
        element_from_json_dict(d)


def test_json_accepts_invalid_tables_but_validate_flags_them():
    d = {"n": 1, "pieces": [{"dom": ["0"], "ran": ["0"]}]}
    g = element_from_json_dict(d)
    assert not validate(g)


def test_json_rejects_bad_words():
    with pytest.raises(ValueError):
        element_from_json('{"n": 1, "pieces": [{"dom": ["2"], "ran": [""]}]}')
