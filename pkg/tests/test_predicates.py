from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qwi import predicates as P
from qwi.generators import gen_plmap, make_bump
from qwi.numbers import NEG_INF, POS_INF, QInterval
from qwi.plmap import PLMap

plmaps = st.builds(gen_plmap, st.integers(0, 10**6), st.integers(0, 6))


def bump(a, b, up=True):
    return make_bump(QInterval(Fraction(a), Fraction(b)), up=up)


def test_comp():
    assert P.comp_sem(PLMap.identity())
    assert P.comp_sem(PLMap.translation(-3))
    assert P.comp_sem(bump(0, 1))
    doubling = PLMap((), ((Fraction(2), Fraction(0)),))
    assert not P.comp_sem(doubling)  # below 0 it moves down, above 0 up
    mixed = bump(0, 1).compose(bump(2, 3, up=False))
    assert not P.comp_sem(mixed)


def test_apart_and_disj():
    a, b = bump(0, 1), bump(2, 3)
    assert P.apart_sem(a, b) and P.disj_sem(a, b)
    c = bump(0, 3)
    assert not P.apart_sem(a, c) and not P.disj_sem(a, c)
    # sharing only the boundary point keeps supports disjoint
    d = bump(1, 2)
    assert P.apart_sem(a, d) and P.disj_sem(a, d)
    e = PLMap.identity()
    assert P.apart_sem(a, e) and P.disj_sem(a, e)


def test_bump_and_orbital():
    assert P.bump_sem(bump(0, 1))
    assert P.bump_sem(PLMap.translation(1))
    assert not P.bump_sem(PLMap.identity())
    two = bump(0, 1).compose(bump(2, 3))
    assert not P.bump_sem(two)
    assert P.orbital_sem(bump(0, 1), two)
    assert P.orbital_sem(bump(2, 3), two)
    assert not P.orbital_sem(bump(0, 1), bump(2, 3))
    assert not P.orbital_sem(two, two)


def test_restr_and_witness():
    y = bump(0, 1).compose(bump(2, 3, up=False))
    x = bump(0, 1)
    assert P.restr_sem(x, y)
    z = P.restr_witness(x, y)
    assert z == bump(2, 3, up=False)
    assert P.disj_sem(x, z) and x.compose(z) == y
    assert P.restr_sem(y, y) and P.restr_sem(PLMap.identity(), y)
    assert P.restr_witness(y, y) == PLMap.identity()
    # moving only half of one orbital is not a restriction
    assert not P.restr_sem(bump(0, Fraction(1, 2)), y)
    assert P.restr_witness(bump(0, Fraction(1, 2)), y) is None


def test_cont():
    y = bump(0, 3)
    assert P.cont_sem(bump(1, 2), y)  # smaller support inside one component
    assert P.cont_sem(PLMap.identity(), y)
    assert not P.cont_sem(PLMap.translation(1), y)


def test_coterm_cof_codesame():
    assert P.coterm_sem(PLMap.translation(1))
    assert not P.coterm_sem(bump(0, 1))
    right = make_bump(QInterval(Fraction(2), POS_INF))
    left = make_bump(QInterval(NEG_INF, Fraction(2)), up=False)
    assert P.cof_sem(right) and P.cof_sem(left)
    assert not P.cof_sem(PLMap.translation(1))
    assert not P.cof_sem(bump(0, 1))
    assert P.cof_endpoint(right) == 2 == P.cof_endpoint(left)
    assert P.codesame_sem(right, left)
    assert not P.codesame_sem(right, make_bump(QInterval(Fraction(3), POS_INF)))
    with pytest.raises(ValueError):
        P.cof_endpoint(bump(0, 1))


def test_oppsupport():
    right = make_bump(QInterval(Fraction(0), POS_INF))
    left = make_bump(QInterval(NEG_INF, Fraction(0)))
    assert P.oppsupport_sem(right, left)
    assert not P.oppsupport_sem(right, right)
    shifted = make_bump(QInterval(NEG_INF, Fraction(1)))
    assert not P.oppsupport_sem(right, shifted)


def test_finrational_and_sameset():
    from qwi.interp import encode_finite_set
    f = encode_finite_set([Fraction(0), Fraction(1)])
    assert P.finrational_sem(f)
    assert P.fixed_point_set(f) == (Fraction(0), Fraction(1))
    assert P.finrational_sem(PLMap.translation(1))  # encodes the empty set
    assert P.fixed_point_set(PLMap.translation(1)) == ()
    assert not P.finrational_sem(bump(0, 1))  # fixed intervals, not points
    g = encode_finite_set([Fraction(1), Fraction(0)])
    assert P.sameset_sem(f, g)
    assert not P.sameset_sem(f, encode_finite_set([Fraction(0)]))


def test_member():
    from qwi.interp import encode_finite_set, encode_rational
    S = [Fraction(-1), Fraction(1, 2)]
    g = encode_finite_set(S)
    for q in [Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(3)]:
        for side in ("left", "right"):
            assert P.member_sem(encode_rational(q, side), g) == (q in S)
    with pytest.raises(ValueError):
        P.member_sem(PLMap.translation(1), g)  # not a cofinal bump
    with pytest.raises(ValueError):
        P.member_sem(encode_rational(Fraction(0)), bump(0, 1))


@given(plmaps)
@settings(max_examples=60)
def test_restriction_of_random_maps(y):
    comps = [iv for iv, _ in y.signed_support()]
    for iv in comps:
        x = P.restrict_map(y, [iv])
        assert P.orbital_sem(x, y)
        z = P.restr_witness(x, y)
        assert z is not None and x.compose(z) == y


def test_cont_literal_degenerates_on_dense_support():
    x, y, lit, sem = P.cont_degeneracy_example()
    assert lit and not sem
    assert P.finrational_sem(y)  # dense support: nothing is disjoint from y
    hits = P.discrepancy_search("cont", trials=100, seed=0)
    assert hits, "expected the literal cont macro to diverge somewhere"
    assert hits == P.discrepancy_search("cont", trials=100, seed=0)


@pytest.mark.parametrize("macro", ["coterm", "cof", "oppsupport"])
def test_other_literals_agree_with_oracles(macro):
    assert P.discrepancy_search(macro, trials=150, seed=0) == []


def test_discrepancy_search_rejects_unknown_macro():
    with pytest.raises(ValueError):
        P.discrepancy_search("bump", 10, 0)
