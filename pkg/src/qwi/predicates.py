"""Semantic oracles for the group-language predicates.

Each `*_sem` function implements the intended meaning of a predicate over
executable maps, decided exactly from support/fixed-point structure.  The
literal quantified macro definitions live in `discrepancy_search`, which
compares them against these oracles over seeded pools: the two layers are
deliberately distinct, because the literal macros quantify over the whole
group and degenerate on dense supports.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .numbers import NEG_INF, POS_INF, IntervalSet, QInterval, is_finite, pick_fresh
from .plmap import PLMap, displacement_signs
from .generators import gen_plmap_rnd, make_bump


# ---------------------------------------------------------------------------
# structural helpers
# ---------------------------------------------------------------------------

def maps_agree_on(f: PLMap, g: PLMap, iv: QInterval) -> bool:
    """Exact equality of f and g on the open interval `iv`."""
    if iv.is_empty():
        return True
    bpts = sorted({c for c in f.cuts + g.cuts if iv.lo < c < iv.hi})
    ends = [iv.lo] + bpts + [iv.hi]
    for lo, hi in zip(ends, ends[1:]):
        x = pick_fresh(QInterval(lo, hi))
        if f.pieces[f.piece_index(x)] != g.pieces[g.piece_index(x)]:
            return False
    return True


def restrict_map(y: PLMap, comps: list[QInterval]) -> PLMap:
    """The automorphism equal to y on the given support components of y and
    the identity elsewhere.  Component endpoints must be fixed by y."""
    cuts: set[Fraction] = set()
    for iv in comps:
        for end in (iv.lo, iv.hi):
            if is_finite(end):
                cuts.add(end)
        cuts.update(c for c in y.cuts if iv.lo < c < iv.hi)
    xs = sorted(cuts)
    ends = [NEG_INF] + xs + [POS_INF]
    pieces = []
    for lo, hi in zip(ends, ends[1:]):
        x = pick_fresh(QInterval(lo, hi))
        if any(iv.contains(x) for iv in comps):
            pieces.append(y.pieces[y.piece_index(x)])
        else:
            pieces.append((Fraction(1), Fraction(0)))
    return PLMap(xs, pieces)


# ---------------------------------------------------------------------------
# predicate oracles
# ---------------------------------------------------------------------------

def comp_sem(f: PLMap) -> bool:
    """f is comparable with the identity: f(x) >= x everywhere or <= everywhere."""
    signs = displacement_signs(f)
    return not ({1, -1} <= signs)


def apart_sem(f: PLMap, g: PLMap) -> bool:
    """The supports lie entirely on opposite sides (vacuous if one is empty)."""
    sf, sg = f.support(), g.support()
    if sf.is_empty() or sg.is_empty():
        return True
    return sf.sup() <= sg.inf() or sg.sup() <= sf.inf()


def disj_sem(f: PLMap, g: PLMap) -> bool:
    return not f.support().intersects(g.support())


def bump_sem(f: PLMap) -> bool:
    return len(f.signed_support()) == 1


def orbital_sem(x: PLMap, y: PLMap) -> bool:
    """x is a single orbital of y: a bump equal to y on one support
    component of y."""
    if not bump_sem(x):
        return False
    (iv_x, _), = x.signed_support()
    for iv_y, _ in y.signed_support():
        if iv_y == iv_x:
            return maps_agree_on(x, y, iv_x)
    return False


def restr_sem(x: PLMap, y: PLMap) -> bool:
    """x is a restriction of y: on each support component of y, x is either
    equal to y or the identity, and x moves nothing outside supp(y)."""
    if not x.support().is_subset_of(y.support()):
        return False
    for iv, _ in y.signed_support():
        if not (maps_agree_on(x, y, iv) or maps_agree_on(x, PLMap.identity(), iv)):
            return False
    return True


def restr_witness(x: PLMap, y: PLMap) -> Optional[PLMap]:
    """z with disj(x, z) and x·z = y, or None when restr_sem fails."""
    if not restr_sem(x, y):
        return None
    rest = [iv for iv, _ in y.signed_support() if not x.support().intersects(IntervalSet([iv]))]
    return restrict_map(y, rest)


def cont_sem(x: PLMap, y: PLMap) -> bool:
    """Support containment supp(x) ⊆ supp(y)."""
    return x.support().is_subset_of(y.support())


def coterm_sem(f: PLMap) -> bool:
    return f.support().is_full_line()


def cof_sem(f: PLMap) -> bool:
    """A bump whose support is bounded on exactly one side."""
    if not bump_sem(f):
        return False
    (iv, _), = f.signed_support()
    return is_finite(iv.lo) != is_finite(iv.hi)


def cof_endpoint(f: PLMap) -> Fraction:
    """The finite support endpoint of a cofinal element."""
    if not cof_sem(f):
        raise ValueError("not a cofinal element")
    (iv, _), = f.signed_support()
    return iv.lo if is_finite(iv.lo) else iv.hi


def codesame_sem(f: PLMap, g: PLMap) -> bool:
    """Both cofinal, encoding the same endpoint (either side)."""
    return cof_sem(f) and cof_sem(g) and cof_endpoint(f) == cof_endpoint(g)


def oppsupport_sem(f: PLMap, g: PLMap) -> bool:
    """Supports are exactly (-inf, a) and (a, inf) for one common a."""
    if not (cof_sem(f) and cof_sem(g)):
        return False
    (ivf, _), = f.signed_support()
    (ivg, _), = g.signed_support()
    if is_finite(ivf.lo) == is_finite(ivg.lo):
        return False
    return cof_endpoint(f) == cof_endpoint(g)


def rational_sem(f: PLMap) -> bool:
    """Cofinal with rational endpoint — on executable maps every endpoint is
    rational, so this coincides with cof_sem; the irrational side of the
    distinction lives at pattern level (classify_cofinal)."""
    return cof_sem(f)


def finrational_sem(f: PLMap) -> bool:
    """Comparable with the identity, dense support, finitely many (hence all
    rational) fixed points.  Such an element encodes its fixed-point set,
    possibly empty."""
    if not comp_sem(f):
        return False
    _, intervals = f.fixed_structure()
    return not intervals


def fixed_point_set(f: PLMap) -> tuple[Fraction, ...]:
    points, intervals = f.fixed_structure()
    if intervals:
        raise ValueError("fixed set is not finite")
    return points


def sameset_sem(f: PLMap, g: PLMap) -> bool:
    if not (finrational_sem(f) and finrational_sem(g)):
        return False
    return fixed_point_set(f) == fixed_point_set(g)


def member_sem(f: PLMap, g: PLMap) -> bool:
    """The rational encoded by f belongs to the finite set encoded by g.

    Constructs the mirror bump f' on the complementary side of f's endpoint,
    so that f·f' has support ℚ∖{q}; membership is then support containment
    of g in f·f'.
    """
    if not rational_sem(f):
        raise ValueError("first argument must encode a rational (cofinal bump)")
    if not finrational_sem(g):
        raise ValueError("second argument must encode a finite set")
    q = cof_endpoint(f)
    (iv, _), = f.signed_support()
    if is_finite(iv.lo):
        fp = make_bump(QInterval(NEG_INF, q))
    else:
        fp = make_bump(QInterval(q, POS_INF))
    assert oppsupport_sem(f, fp)
    return cont_sem(g, f.compose(fp))


# ---------------------------------------------------------------------------
# literal macros and the discrepancy finder
# ---------------------------------------------------------------------------

def _gap_bumps(y: PLMap) -> list[PLMap]:
    """Bumps supported on the interior of each fixed region of y — the
    constructive witnesses disjoint from y."""
    out = []
    for lo, hi in y.fixed_items():
        if lo < hi:
            out.append(make_bump(QInterval(lo, hi)))
    return out


def _cont_literal(x: PLMap, y: PLMap, pool: list[PLMap]) -> bool:
    # ∀z(disj(y,z) → disj(x,z)) over the pool plus gap bumps of y
    for z in pool + _gap_bumps(y):
        if disj_sem(y, z) and not disj_sem(x, z):
            return False
    return True


def _coterm_literal(f: PLMap, pool: list[PLMap]) -> bool:
    # a bump not disjoint from any non-identity element
    if not bump_sem(f):
        return False
    for z in pool + _gap_bumps(f):
        if not z.is_identity() and disj_sem(f, z):
            return False
    return True


def _cof_literal(f: PLMap, pool: list[PLMap]) -> bool:
    # a non-coterminal bump not disjoint from any of its conjugates
    if not bump_sem(f) or _coterm_literal(f, pool):
        return False
    conjugators = list(pool)
    sup = f.support()
    if is_finite(sup.inf()) and is_finite(sup.sup()):
        conjugators.append(PLMap.translation(sup.sup() - sup.inf() + 1))
    for g in conjugators:
        if disj_sem(f, f.conjugate_by(g)):
            return False
    return True


def _oppsupport_literal(f: PLMap, g: PLMap, pool: list[PLMap]) -> bool:
    # disjoint cofinal bumps with no non-identity element disjoint from both
    if not (_cof_literal(f, pool) and _cof_literal(g, pool) and disj_sem(f, g)):
        return False
    gap = IntervalSet(
        [QInterval(min(f.support().sup(), g.support().sup()),
                   max(f.support().inf(), g.support().inf()))]
    )
    witnesses = list(pool)
    for iv in gap:
        witnesses.append(make_bump(iv))
    for z in witnesses:
        if not z.is_identity() and disj_sem(f, z) and disj_sem(g, z):
            return False
    return True


_LITERALS = {"cont", "coterm", "cof", "oppsupport"}


def discrepancy_search(macro: str, trials: int, seed: int) -> list[tuple]:
    """Compare a literal macro definition against the intended oracle.

    Returns (inputs..., literal_value, oracle_value) tuples wherever a
    refutation or witness from the pool proves the two disagree.  The cont
    macro is expected to diverge: a dense-support y has no disjoint
    non-identity partner, so the literal ∀z clause is vacuously true no
    matter what x does.
    """
    if macro not in _LITERALS:
        raise ValueError(f"unknown macro {macro!r}; expected one of {sorted(_LITERALS)}")
    rnd = random.Random(f"discrepancy:{macro}:{seed}")
    found = []
    for _ in range(trials):
        pool = [gen_plmap_rnd(rnd, 4) for _ in range(8)]
        f = gen_plmap_rnd(rnd, 4)
        if macro == "cont":
            g = gen_plmap_rnd(rnd, 4)
            lit, sem = _cont_literal(f, g, pool), cont_sem(f, g)
            if lit != sem:
                found.append((f, g, lit, sem))
        elif macro == "coterm":
            lit, sem = _coterm_literal(f, pool), coterm_sem(f)
            if lit != sem:
                found.append((f, lit, sem))
        elif macro == "cof":
            lit, sem = _cof_literal(f, pool), cof_sem(f)
            if lit != sem:
                found.append((f, lit, sem))
        else:
            g = gen_plmap_rnd(rnd, 4)
            lit, sem = _oppsupport_literal(f, g, pool), oppsupport_sem(f, g)
            if lit != sem:
                found.append((f, g, lit, sem))
    return found


def cont_degeneracy_example() -> tuple[PLMap, PLMap, bool, bool]:
    """The canonical divergence: y with dense support and fixed points
    {0, 1}, x a translation whose support is certainly not contained in
    supp(y) — yet the literal macro holds vacuously."""
    y = PLMap(
        (Fraction(0), Fraction(1, 3), Fraction(1)),
        ((Fraction(1, 2), Fraction(0)), (Fraction(2), Fraction(0)),
         (Fraction(1, 2), Fraction(1, 2)), (Fraction(2), Fraction(-1))),
    )
    x = PLMap.translation(1)
    lit = _cont_literal(x, y, [])
    sem = cont_sem(x, y)
    assert lit and not sem
    return x, y, lit, sem
