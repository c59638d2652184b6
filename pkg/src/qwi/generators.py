"""Seeded random generators for maps and patterns.

Everything downstream (suites, discrepancy search, property tests) draws
from here, so one seed fixes every case list.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .numbers import QInterval, is_finite
from .plmap import PLMap
from .patterns import OrbitalPattern, enumerate_patterns


def gen_plmap(seed: int, complexity: int) -> PLMap:
    """A random canonical map with at most `complexity` cuts.

    The mixture covers the qualitatively distinct shapes: identity,
    translations, single bumps (bounded, cofinal, coterminal), and generic
    multi-orbital mixed-parity elements.
    """
    rnd = random.Random(f"plmap:{seed}:{complexity}")
    return gen_plmap_rnd(rnd, complexity)


def gen_plmap_rnd(rnd: random.Random, complexity: int) -> PLMap:
    roll = rnd.random()
    if roll < 0.05:
        return PLMap.identity()
    if roll < 0.20 or complexity == 0:
        return PLMap.translation(_rat(rnd))
    if roll < 0.40:
        return make_bump(_rand_interval(rnd), up=rnd.random() < 0.5)
    n = rnd.randint(1, max(1, complexity))
    cuts = sorted(rnd.sample([Fraction(k, rnd.choice([1, 1, 2, 3])) for k in range(-12, 13)], n))
    while len(set(cuts)) < n:
        cuts = sorted(rnd.sample(range(-3 * complexity - 2, 3 * complexity + 3), n))
        cuts = [Fraction(c) for c in cuts]
    slopes = [Fraction(rnd.randint(1, 6), rnd.randint(1, 6)) for _ in range(n + 1)]
    anchor = cuts[0] - 1
    value = _rat(rnd)
    return PLMap.from_slopes(anchor, value, cuts, slopes)


def _rat(rnd: random.Random) -> Fraction:
    return Fraction(rnd.randint(-12, 12), rnd.choice([1, 1, 2, 3, 4]))


def _rand_interval(rnd: random.Random) -> QInterval:
    from .numbers import NEG_INF, POS_INF
    shape = rnd.random()
    a = _rat(rnd)
    if shape < 0.25:
        return QInterval(NEG_INF, POS_INF)
    if shape < 0.5:
        return QInterval(a, POS_INF)
    if shape < 0.75:
        return QInterval(NEG_INF, a)
    b = a + Fraction(rnd.randint(1, 8), rnd.choice([1, 2]))
    return QInterval(a, b)


def make_bump(iv: QInterval, up: bool = True) -> PLMap:
    """The canonical bump supported exactly on the open interval `iv`."""
    if iv.is_empty():
        raise ValueError(f"empty interval {iv}")
    lo, hi = iv.lo, iv.hi
    if not is_finite(lo) and not is_finite(hi):
        f = PLMap.translation(1)
    elif not is_finite(lo):
        f = PLMap((hi,), ((Fraction(1, 2), hi / 2), (Fraction(1), Fraction(0))))
    elif not is_finite(hi):
        f = PLMap((lo,), ((Fraction(1), Fraction(0)), (Fraction(2), -lo)))
    else:
        mid = lo + (hi - lo) / 3
        f = PLMap.from_slopes(lo, lo, [lo, mid, hi],
                              [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(1)])
    return f if up else f.inverse()


def gen_pattern(seed: int, max_core: int = 4, max_tail: int = 2) -> OrbitalPattern:
    rnd = random.Random(f"pattern:{seed}")
    pool = list(enumerate_patterns(max_core, max_tail))
    return rnd.choice(pool)
