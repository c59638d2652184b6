from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qwi.corpus import load_corpus
from qwi.formulas import FormulaError, parse_wmso, qdepth
from qwi.numbers import NEG_INF, POS_INF, QInterval
from qwi.wmso import (
    Assignment, EMPTY, brute_eval, decide, eval as wmso_eval, fresh_chain,
    gaps_of, point_candidates, stability_probe,
)

rationals = st.fractions(max_denominator=30)

POOL = [Fraction(-2), Fraction(-1), Fraction(0), Fraction(1, 2),
        Fraction(1), Fraction(3)]


def test_assignment_landmarks():
    a = EMPTY.with_point("x", Fraction(1)).with_set("X", [Fraction(0), Fraction(2)])
    assert a.landmarks() == [Fraction(0), Fraction(1), Fraction(2)]
    assert a.sets["X"] == (Fraction(0), Fraction(2))
    # duplicates collapse
    b = a.with_set("Y", [Fraction(1), Fraction(1)])
    assert b.sets["Y"] == (Fraction(1),)


def test_gaps_and_fresh_chains():
    gaps = gaps_of([Fraction(0), Fraction(1)])
    assert gaps == [QInterval(NEG_INF, Fraction(0)),
                    QInterval(Fraction(0), Fraction(1)),
                    QInterval(Fraction(1), POS_INF)]
    chain = fresh_chain(gaps[1], 3)
    assert len(chain) == 3
    assert all(gaps[1].contains(q) for q in chain)
    assert sorted(chain) == list(chain) and len(set(chain)) == 3


def test_point_candidates_cover_each_gap():
    a = EMPTY.with_point("x", Fraction(0))
    cands = point_candidates(a)
    assert Fraction(0) in cands
    assert any(q < 0 for q in cands) and any(q > 0 for q in cands)


def test_eval_rejects_small_cap_and_free_vars():
    phi = parse_wmso("EX Ax (x in X)")
    with pytest.raises(FormulaError):
        wmso_eval(phi, EMPTY, cap=1)  # qdepth 2
    with pytest.raises(FormulaError):
        decide(parse_wmso("x < y"))


def test_eval_with_assignment():
    less = parse_wmso("x < y")
    a = EMPTY.with_point("x", Fraction(0)).with_point("y", Fraction(1))
    assert wmso_eval(less, a, cap=1)
    assert not wmso_eval(less, EMPTY.with_point("x", Fraction(1))
                         .with_point("y", Fraction(0)), cap=1)
    member = parse_wmso("x in X")
    b = EMPTY.with_point("x", Fraction(2)).with_set("X", [Fraction(2)])
    assert wmso_eval(member, b, cap=1)


def test_extensionality_of_finite_sets():
    phi = parse_wmso(
        "AX AY (((Ax (x in X)) <-> (Ax (x in Y)))"
        " | (Ex ((x in X & ~(x in Y)) | (x in Y & ~(x in X)))))")
    assert decide(phi)


def test_corpus_truth_values():
    for truth, text, note in load_corpus():
        assert decide(parse_wmso(text)) == truth, (text, note)


def test_corpus_cap_stability():
    for truth, text, note in load_corpus():
        phi = parse_wmso(text)
        base = max(qdepth(phi), 1)
        assert stability_probe(phi, [base, base + 1, base + 2]) == [truth] * 3, text


def test_corpus_brute_agreement_small_depth():
    for truth, text, note in load_corpus():
        phi = parse_wmso(text)
        if qdepth(phi) <= 3:
            assert brute_eval(phi, EMPTY, POOL) == truth, text


def test_corpus_is_large_and_balanced():
    entries = load_corpus()
    assert len(entries) >= 20
    truths = [t for t, _, _ in entries]
    assert True in truths and False in truths


@given(rationals, rationals)
@settings(max_examples=30)
def test_open_formulas_respect_order(a, b):
    phi = parse_wmso("Ez (x < z & z < y)")
    env = EMPTY.with_point("x", a).with_point("y", b)
    assert wmso_eval(phi, env, cap=1) == (a < b)
