"""Piecewise-linear order-automorphisms of (ℚ,<) with exact group operations.

A map is a finite list of affine pieces with positive rational slopes,
continuous at every breakpoint.  Positivity plus continuity make every such
map an order-preserving bijection of ℚ, so structural equality of canonical
forms is group-element equality.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Sequence

from .numbers import (
    NEG_INF,
    POS_INF,
    ExtRat,
    IntervalSet,
    QInterval,
    is_finite,
    parse_rational,
    pick_fresh,
)

Piece = tuple[Fraction, Fraction]  # (slope, intercept)


class PLMapError(ValueError):
    pass


class PLMap:
    """An order-automorphism of ℚ given by `len(cuts)+1` affine pieces."""

    __slots__ = ("cuts", "pieces")

    def __init__(self, cuts: Sequence[Fraction], pieces: Sequence[Piece]):
        cuts = tuple(Fraction(c) for c in cuts)
        pieces = tuple((Fraction(m), Fraction(c)) for m, c in pieces)
        if len(pieces) != len(cuts) + 1:
            raise PLMapError(
                f"{len(cuts)} cuts need {len(cuts) + 1} pieces, got {len(pieces)}"
            )
        for a, b in zip(cuts, cuts[1:]):
            if not a < b:
                raise PLMapError(f"cuts not strictly increasing at {a}, {b}")
        for m, _ in pieces:
            if m <= 0:
                raise PLMapError(f"non-positive slope {m} (not order-preserving)")
        for i, b in enumerate(cuts):
            ml, cl = pieces[i]
            mr, cr = pieces[i + 1]
            if ml * b + cl != mr * b + cr:
                raise PLMapError(f"discontinuous at cut {b}")
        # canonical form: merge equal adjacent pieces
        ccuts: list[Fraction] = []
        cpieces: list[Piece] = [pieces[0]]
        for b, p in zip(cuts, pieces[1:]):
            if p == cpieces[-1]:
                continue
            ccuts.append(b)
            cpieces.append(p)
        self.cuts = tuple(ccuts)
        self.pieces = tuple(cpieces)

    # -- construction ------------------------------------------------------

    @staticmethod
    def identity() -> "PLMap":
        return PLMap((), ((Fraction(1), Fraction(0)),))

    @staticmethod
    def translation(a) -> "PLMap":
        return PLMap((), ((Fraction(1), Fraction(a)),))

    @staticmethod
    def from_slopes(anchor: Fraction, value: Fraction,
                    cuts: Sequence[Fraction], slopes: Sequence[Fraction]) -> "PLMap":
        """Build a continuous map from slopes only: passes through
        (anchor, value), with `anchor <= cuts[0]` if any cuts are given."""
        cuts = [Fraction(c) for c in cuts]
        slopes = [Fraction(s) for s in slopes]
        if len(slopes) != len(cuts) + 1:
            raise PLMapError("need one more slope than cuts")
        pieces = [(slopes[0], value - slopes[0] * anchor)]
        for b, m in zip(cuts, slopes[1:]):
            mprev, cprev = pieces[-1]
            y = mprev * b + cprev
            pieces.append((m, y - m * b))
        return PLMap(cuts, pieces)

    # -- basic queries -----------------------------------------------------

    def is_identity(self) -> bool:
        return self.pieces == ((Fraction(1), Fraction(0)),)

    def piece_index(self, q: Fraction) -> int:
        return bisect_right(self.cuts, q)

    def apply(self, q: Fraction) -> Fraction:
        q = Fraction(q)
        m, c = self.pieces[self.piece_index(q)]
        return m * q + c

    __call__ = apply

    def apply_inverse(self, q: Fraction) -> Fraction:
        q = Fraction(q)
        image_cuts = [self.apply(b) for b in self.cuts]
        i = bisect_right(image_cuts, q)
        m, c = self.pieces[i]
        return (q - c) / m

    def piece_domains(self) -> list[tuple[ExtRat, ExtRat]]:
        """Closed domain [lo, hi] of each piece (extended endpoints)."""
        los: list[ExtRat] = [NEG_INF] + list(self.cuts)
        his: list[ExtRat] = list(self.cuts) + [POS_INF]
        return list(zip(los, his))

    # -- group operations --------------------------------------------------

    def compose(self, other: "PLMap") -> "PLMap":
        """self ∘ other, i.e. x ↦ self(other(x))."""
        cand = set(other.cuts)
        cand.update(other.apply_inverse(b) for b in self.cuts)
        cuts = sorted(cand)
        pieces: list[Piece] = []
        for lo, hi in _regions(cuts):
            x = _sample(lo, hi)
            mg, cg = other.pieces[other.piece_index(x)]
            mf, cf = self.pieces[self.piece_index(other.apply(x))]
            pieces.append((mf * mg, mf * cg + cf))
        return PLMap(cuts, pieces)

    def inverse(self) -> "PLMap":
        cuts = [self.apply(b) for b in self.cuts]
        pieces = [(1 / m, -c / m) for m, c in self.pieces]
        return PLMap(cuts, pieces)

    def conjugate_by(self, g: "PLMap") -> "PLMap":
        """g ∘ self ∘ g⁻¹."""
        return g.compose(self).compose(g.inverse())

    def __pow__(self, n: int) -> "PLMap":
        if n < 0:
            return self.inverse() ** (-n)
        out = PLMap.identity()
        base = self
        while n:
            if n & 1:
                out = out.compose(base)
            base = base.compose(base)
            n >>= 1
        return out

    # -- fixed points and support ------------------------------------------

    def fixed_structure(self) -> tuple[tuple[Fraction, ...], tuple[tuple[ExtRat, ExtRat], ...]]:
        """Exact solution set of f(x) = x.

        Returns isolated fixed points and maximal closed fixed intervals
        (interval endpoints may be infinite; the identity yields the single
        interval (-inf, inf)).
        """
        items: list[tuple[ExtRat, ExtRat]] = []  # closed [lo, hi], lo <= hi
        for (m, c), (lo, hi) in zip(self.pieces, self.piece_domains()):
            if m == 1:
                if c == 0:
                    items.append((lo, hi))
                continue
            x = c / (1 - m)
            if lo <= x <= hi:
                items.append((x, x))
        merged: list[tuple[ExtRat, ExtRat]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi, key=_ext_key))
            else:
                merged.append((lo, hi))
        points = tuple(lo for lo, hi in merged if lo == hi)
        intervals = tuple(it for it in merged if it[0] != it[1])
        return points, intervals

    def fixed_items(self) -> list[tuple[ExtRat, ExtRat]]:
        """All maximal fixed regions (points as degenerate intervals), sorted."""
        points, intervals = self.fixed_structure()
        return sorted(
            [(p, p) for p in points] + list(intervals),
            key=lambda it: _ext_key(it[0]),
        )

    def support(self) -> IntervalSet:
        return IntervalSet([iv for iv, _ in self.signed_support()])

    def signed_support(self) -> list[tuple[QInterval, int]]:
        """Open components of {x : f(x) != x}, each with its displacement sign."""
        items = self.fixed_items()
        gaps: list[QInterval] = []
        prev: ExtRat = NEG_INF
        for lo, hi in items:
            gaps.append(QInterval(prev, lo))
            prev = hi
        gaps.append(QInterval(prev, POS_INF))
        out = []
        for g in gaps:
            if g.is_empty():
                continue
            x = pick_fresh(g)
            d = self.apply(x) - x
            assert d != 0
            out.append((g, 1 if d > 0 else -1))
        return out

    # -- text format -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, PLMap)
            and self.cuts == other.cuts
            and self.pieces == other.pieces
        )

    def __hash__(self):
        return hash((self.cuts, self.pieces))

    def __repr__(self):
        return format_pl(self)


def _regions(cuts: Sequence[Fraction]) -> Iterable[tuple[ExtRat, ExtRat]]:
    los: list[ExtRat] = [NEG_INF] + list(cuts)
    his: list[ExtRat] = list(cuts) + [POS_INF]
    return zip(los, his)


def _sample(lo: ExtRat, hi: ExtRat) -> Fraction:
    return pick_fresh(QInterval(lo, hi))


def _ext_key(x: ExtRat):
    if not is_finite(x):
        return (x.sign, Fraction(0))
    return (0, x)


def compose(f: PLMap, g: PLMap) -> PLMap:
    """x ↦ f(g(x))."""
    return f.compose(g)


def conjugate(f: PLMap, g: PLMap) -> PLMap:
    """g ∘ f ∘ g⁻¹ (the conjugate of f by g)."""
    return f.conjugate_by(g)


# -- comparability with the identity (shared by predicates) ----------------

def displacement_signs(f: PLMap) -> set[int]:
    """Signs (-1, 0, +1) attained by f(x) - x over all of ℚ."""
    signs: set[int] = set()
    for (m, c), (lo, hi) in zip(f.pieces, f.piece_domains()):
        # d(x) = (m-1)x + c is affine; its sign range on [lo, hi] is
        # determined by the (limit) values at the two ends.
        for end in (lo, hi):
            if is_finite(end):
                d = (m - 1) * end + c
                signs.add(0 if d == 0 else (1 if d > 0 else -1))
            else:
                s = m - 1 if m != 1 else c
                if end is NEG_INF:
                    s = -s if m != 1 else c
                if s == 0:
                    signs.add(0)
                else:
                    signs.add(1 if s > 0 else -1)
        if m != 1:
            x = c / (1 - m)
            if lo <= x <= hi:
                signs.add(0)
    return signs


# -- text format -----------------------------------------------------------

_PL_RE = re.compile(r"^pl\s+cuts=\[(?P<cuts>[^\]]*)\]\s+pieces=\[(?P<pieces>.*)\]\s*$")
_PAIR_RE = re.compile(r"\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)")


def format_pl(f: PLMap) -> str:
    if f.is_identity():
        return "pl id"
    cuts = ",".join(str(c) for c in f.cuts)
    pieces = ",".join(f"({m},{c})" for m, c in f.pieces)
    return f"pl cuts=[{cuts}] pieces=[{pieces}]"


def parse_pl(text: str) -> PLMap:
    """Parse the one-line `pl ...` syntax, rejecting non-canonical input."""
    t = text.strip()
    if t == "pl id":
        return PLMap.identity()
    m = _PL_RE.match(t)
    if not m:
        raise PLMapError(f"unparseable pl map: {text!r}")
    cuts_txt = m.group("cuts").strip()
    cuts = [parse_rational(c) for c in cuts_txt.split(",")] if cuts_txt else []
    pieces = [
        (parse_rational(a), parse_rational(b))
        for a, b in _PAIR_RE.findall(m.group("pieces"))
    ]
    if not pieces:
        raise PLMapError(f"no pieces in {text!r}")
    for p, q in zip(pieces, pieces[1:]):
        if p == q:
            raise PLMapError(f"non-canonical input (adjacent identical pieces {p})")
    return PLMap(cuts, pieces)
