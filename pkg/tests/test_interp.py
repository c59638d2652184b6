from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qwi import predicates as P
from qwi.corpus import load_corpus
from qwi.formulas import Exists, GAtom, parse_wmso, print_group, qdepth
from qwi.interp import (
    InterpError, decode, encode_finite_set, encode_finite_set_alt,
    encode_rational, less_p, pullback_eval, roundtrip_check, translate,
)
from qwi.numbers import NEG_INF, POS_INF, is_finite

rationals = st.fractions(max_denominator=24)
finite_sets = st.frozensets(rationals, max_size=5)


@given(rationals)
def test_encode_rational_is_cofinal_and_decodes(q):
    for side in ("left", "right"):
        f = encode_rational(q, side)
        assert P.rational_sem(f)
        assert P.cof_endpoint(f) == q
        assert decode(f) == q
    (iv, _), = encode_rational(q, "right").signed_support()
    assert is_finite(iv.lo) and iv.hi is POS_INF
    (iv, _), = encode_rational(q, "left").signed_support()
    assert iv.lo is NEG_INF and is_finite(iv.hi)


@given(rationals, rationals)
def test_codesame_identifies_exactly_equal_rationals(p, q):
    fp = encode_rational(p, "left")
    fq = encode_rational(q, "right")
    assert P.codesame_sem(fp, fq) == (p == q)


@given(finite_sets)
@settings(max_examples=60)
def test_encode_finite_set_variants(S):
    for enc in (encode_finite_set, encode_finite_set_alt):
        g = enc(S)
        assert P.finrational_sem(g)
        assert decode(g) == tuple(sorted(S))
    assert P.sameset_sem(encode_finite_set(S), encode_finite_set_alt(S))


def test_empty_set_encodings():
    assert P.finrational_sem(encode_finite_set([]))
    assert P.fixed_point_set(encode_finite_set([])) == ()
    assert P.sameset_sem(encode_finite_set([]), encode_finite_set_alt([]))


@given(finite_sets, rationals)
@settings(max_examples=60)
def test_membership_fidelity(S, q):
    for enc in (encode_finite_set, encode_finite_set_alt):
        g = enc(S)
        for side in ("left", "right"):
            assert P.member_sem(encode_rational(q, side), g) == (q in S)


@given(rationals, rationals)
def test_less_oracle_both_orientations(a, b):
    fa, fb = encode_rational(a), encode_rational(b)
    from qwi.generators import make_bump
    from qwi.numbers import QInterval
    right = make_bump(QInterval(Fraction(0), POS_INF))
    left = make_bump(QInterval(NEG_INF, Fraction(0)))
    if a != b:
        assert less_p(fa, fb, right) == (a < b)
        assert less_p(fa, fb, left) == (b < a)  # reversed orientation


def test_translate_shape():
    psi = translate(parse_wmso("Ax Ey (x < y)"))
    assert isinstance(psi, Exists)  # the orientation prefix Ep (cof(p) & ...)
    body = psi.body
    assert isinstance(body.a, GAtom) and body.a.name == "cof"
    text = print_group(psi)
    assert "rational(" in text and "codesame(" in text
    with pytest.raises(InterpError):
        translate(parse_wmso("x < y"))  # open formulas are not sentences


def test_translate_uses_membership_schema():
    psi = translate(parse_wmso("Ex EX (x in X)"))
    text = print_group(psi)
    assert "finrational(" in text
    assert "oppsupport(" in text and "cont(" in text


def test_pullback_rejects_foreign_formulas():
    from qwi.formulas import parse_group
    with pytest.raises(InterpError):
        pullback_eval(parse_group("Ax comp(x)"))


@pytest.mark.parametrize("text,expected", [
    ("Ax Ey (x < y)", True),
    ("Ex Ay ~(y < x)", False),
    ("EX Ax (x in X)", False),
    ("Ex EX (x in X)", True),
    ("Ax Ay (x < y -> Ez (x < z & z < y))", True),
])
def test_roundtrip_examples(text, expected):
    phi = parse_wmso(text)
    from qwi.wmso import decide
    assert decide(phi) == expected
    assert roundtrip_check(phi)


def test_orientation_robustness_on_sample():
    for text in ["Ax Ey (x < y)", "Ex Ay ~(y < x)",
                 "AX Ey Ax (x in X -> x < y)"]:
        psi = translate(parse_wmso(text))
        assert pullback_eval(psi, orientation="right") == \
            pullback_eval(psi, orientation="left")


def test_roundtrip_full_corpus_spot_checks():
    entries = load_corpus()
    for truth, text, note in entries[:6]:
        assert roundtrip_check(parse_wmso(text)), text
