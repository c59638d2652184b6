import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qwi.conjugacy import conjugating_witness, verify_conjugator
from qwi.generators import gen_plmap, gen_plmap_rnd, make_bump
from qwi.numbers import NEG_INF, POS_INF, QInterval
from qwi.patterns import pattern_iso, pattern_of
from qwi.plmap import PLMap

plmaps = st.builds(gen_plmap, st.integers(0, 10**6), st.integers(0, 5))


def check_pair(f, g):
    iso = pattern_iso(pattern_of(f), pattern_of(g))
    w = conjugating_witness(f, g)
    assert (w is not None) == iso
    if w is not None:
        assert verify_conjugator(w, f, g)
    return w


def test_identity_and_translations():
    e = PLMap.identity()
    assert verify_conjugator(conjugating_witness(e, e), e, e)
    t1, t5 = PLMap.translation(1), PLMap.translation(5)
    w = check_pair(t1, t5)
    # the witness really transports orbits: h(f(x)) == g(h(x))
    for x in (Fraction(0), Fraction(7, 3), Fraction(-11)):
        assert w.apply(t1.apply(x)) == t5.apply(w.apply(x))
        assert w.apply_inverse(w.apply(x)) == x


def test_opposite_parity_has_no_witness():
    t = PLMap.translation(1)
    assert conjugating_witness(t, t.inverse()) is None


def test_bounded_vs_halfline_bumps():
    b01 = make_bump(QInterval(Fraction(0), Fraction(1)))
    b23 = make_bump(QInterval(Fraction(2), Fraction(3)))
    half = make_bump(QInterval(Fraction(0), POS_INF))
    w = check_pair(b01, b23)
    assert w is not None
    assert conjugating_witness(b01, half) is None  # different boundary kinds
    check_pair(half, make_bump(QInterval(Fraction(-7), POS_INF)))
    assert conjugating_witness(b01, b01.inverse()) is None


def test_different_germ_slopes_are_still_conjugate():
    # same support, same pattern, but different derivative germs at the ends
    f = PLMap.from_slopes(Fraction(0), Fraction(0),
                          [Fraction(0), Fraction(1), Fraction(3)],
                          [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(1)])
    g = PLMap.from_slopes(Fraction(0), Fraction(0),
                          [Fraction(0), Fraction(1), Fraction(4)],
                          [Fraction(1), Fraction(3), Fraction(1, 3), Fraction(1)])
    w = check_pair(f, g)
    assert w is not None
    x = Fraction(1, 7)
    for _ in range(6):
        assert w.apply(f.apply(x)) == g.apply(w.apply(x))
        x = f.apply(x)


def test_multi_orbital_and_mixed_parity():
    f = make_bump(QInterval(Fraction(0), Fraction(1))).compose(
        make_bump(QInterval(Fraction(2), Fraction(3)), up=False))
    g = make_bump(QInterval(Fraction(-5), Fraction(-4))).compose(
        make_bump(QInterval(Fraction(6), Fraction(7)), up=False))
    w = check_pair(f, g)
    assert w is not None
    swapped = make_bump(QInterval(Fraction(-5), Fraction(-4)), up=False).compose(
        make_bump(QInterval(Fraction(6), Fraction(7))))
    assert conjugating_witness(f, swapped) is None


def test_witness_conjugates_deep_orbit_points():
    f = make_bump(QInterval(Fraction(0), Fraction(1)))
    g = make_bump(QInterval(Fraction(0), Fraction(1)))
    h = gen_plmap(1234, 4)
    g2 = f.conjugate_by(h)
    w = check_pair(f, g2)
    x = Fraction(1, 2)
    for _ in range(12):  # walk far up and down the orbit
        assert w.apply(f.apply(x)) == g2.apply(w.apply(x))
        x = f.apply(x)
    x = Fraction(1, 2)
    for _ in range(12):
        x = f.apply_inverse(x)
        assert w.apply(f.apply(x)) == g2.apply(w.apply(x))


@given(plmaps, plmaps)
@settings(max_examples=80, deadline=None)
def test_witness_iff_pattern_iso_random_pairs(f, g):
    check_pair(f, g)


@given(plmaps, plmaps)
@settings(max_examples=60, deadline=None)
def test_constructed_conjugates_always_witnessed(f, h):
    g = f.conjugate_by(h)
    w = conjugating_witness(f, g)
    assert w is not None
    assert verify_conjugator(w, f, g)


def test_seeded_sweep():
    rnd = random.Random("conjugacy-test:0")
    for _ in range(60):
        f = gen_plmap_rnd(rnd, 5)
        g = gen_plmap_rnd(rnd, 5)
        check_pair(f, g)
        check_pair(f, f.conjugate_by(g))
