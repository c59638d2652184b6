"""Ground-truth semantics for the monadic second-order logic of (ℚ,<)
with set quantifiers ranging over finite sets only.

Point quantifiers are decided by testing each landmark (a rational already
named by the assignment) plus one fresh point per gap: atoms can only
compare the new point against landmarks, so the gap a point falls in
determines everything.  Set quantifiers range over subsets of the landmarks
extended by up to `cap` fresh points per gap; the cap is the number of
points the remaining quantifier prefix could individually interrogate.
The cap rule is validated empirically (cap-stability probes and agreement
with a brute-force subset enumerator), not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .numbers import NEG_INF, POS_INF, QInterval, pick_fresh
from .formulas import (
    And, EqPt, ExistsPt, ExistsSet, ForallPt, ForallSet, Formula, FormulaError,
    Iff, Implies, Less, Mem, Not, Or, free_vars, qdepth,
)


@dataclass(frozen=True)
class Assignment:
    points: dict[str, Fraction] = field(default_factory=dict)
    sets: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)

    def with_point(self, var: str, q: Fraction) -> "Assignment":
        return Assignment({**self.points, var: q}, self.sets)

    def with_set(self, var: str, s: Iterable[Fraction]) -> "Assignment":
        return Assignment(self.points, {**self.sets, var: tuple(sorted(set(s)))})

    def landmarks(self) -> list[Fraction]:
        marks: set[Fraction] = set(self.points.values())
        for s in self.sets.values():
            marks.update(s)
        return sorted(marks)


EMPTY = Assignment()


def gaps_of(landmarks: Sequence[Fraction]) -> list[QInterval]:
    ends = [NEG_INF] + list(landmarks) + [POS_INF]
    return [QInterval(lo, hi) for lo, hi in zip(ends, ends[1:])]


_FRESH_CACHE: dict[QInterval, Fraction] = {}
_CHAIN_CACHE: dict[tuple[QInterval, int], tuple[Fraction, ...]] = {}


def _fresh(gap: QInterval) -> Fraction:
    x = _FRESH_CACHE.get(gap)
    if x is None:
        x = _FRESH_CACHE[gap] = pick_fresh(gap)
    return x


def fresh_chain(gap: QInterval, k: int) -> tuple[Fraction, ...]:
    """k distinct increasing fresh rationals inside an open gap."""
    key = (gap, k)
    out = _CHAIN_CACHE.get(key)
    if out is None:
        acc: list[Fraction] = []
        iv = gap
        for _ in range(k):
            x = _fresh(iv)
            acc.append(x)
            iv = QInterval(x, gap.hi)
        out = _CHAIN_CACHE[key] = tuple(acc)
    return out


def point_candidates(a: Assignment) -> list[Fraction]:
    marks = a.landmarks()
    return marks + [_fresh(g) for g in gaps_of(marks)]


def set_candidates(a: Assignment, cap: int) -> Iterator[tuple[Fraction, ...]]:
    marks = a.landmarks()
    gaps = gaps_of(marks)
    # try candidates with few fresh points first: existential witnesses are
    # usually landmark subsets, so this ordering lets any/all short-circuit
    mults = sorted(product(range(cap + 1), repeat=len(gaps)), key=sum)
    for mult in mults:
        extra: list[Fraction] = []
        for g, k in zip(gaps, mult):
            extra.extend(fresh_chain(g, k))
        for r in range(len(marks) + 1):
            for base in combinations(marks, r):
                yield tuple(sorted(base + tuple(extra)))


def eval(phi: Formula, a: Assignment, cap: int) -> bool:  # noqa: A001
    if cap < qdepth(phi):
        raise FormulaError(f"cap {cap} below quantifier depth {qdepth(phi)}")
    return _Eval(dict(a.points), dict(a.sets), cap).run(phi)


class _Eval:
    """Evaluator over a mutable environment (bindings are pushed and popped
    around quantifier recursion instead of copying assignments)."""

    __slots__ = ("points", "sets", "cap")

    def __init__(self, points: dict, sets: dict, cap: int):
        self.points = points
        self.sets = sets
        self.cap = cap

    def landmarks(self) -> list[Fraction]:
        marks = set(self.points.values())
        for s in self.sets.values():
            marks.update(s)
        return sorted(marks)

    def run(self, phi: Formula) -> bool:
        t = type(phi)
        if t is Less:
            return self.pt(phi.x) < self.pt(phi.y)
        if t is EqPt:
            return self.pt(phi.x) == self.pt(phi.y)
        if t is Mem:
            if phi.X not in self.sets:
                raise FormulaError(f"unbound set variable {phi.X}")
            return self.pt(phi.x) in self.sets[phi.X]
        if t is Not:
            return not self.run(phi.sub)
        if t is And:
            return self.run(phi.a) and self.run(phi.b)
        if t is Or:
            return self.run(phi.a) or self.run(phi.b)
        if t is Implies:
            return (not self.run(phi.a)) or self.run(phi.b)
        if t is Iff:
            return self.run(phi.a) == self.run(phi.b)
        if t is ExistsPt or t is ForallPt:
            marks = self.landmarks()
            cands = marks + [_fresh(g) for g in gaps_of(marks)]
            want = t is ExistsPt
            prev = self.points.get(phi.var, _MISSING)
            try:
                for q in cands:
                    self.points[phi.var] = q
                    if self.run(phi.body) == want:
                        return want
            finally:
                _restore(self.points, phi.var, prev)
            return not want
        if t is ExistsSet or t is ForallSet:
            want = t is ExistsSet
            prev = self.sets.get(phi.var, _MISSING)
            marks = self.landmarks()
            gaps = gaps_of(marks)
            mults = sorted(product(range(self.cap + 1), repeat=len(gaps)), key=sum)
            try:
                for mult in mults:
                    extra: list[Fraction] = []
                    for g, k in zip(gaps, mult):
                        extra.extend(fresh_chain(g, k))
                    for r in range(len(marks) + 1):
                        for base in combinations(marks, r):
                            self.sets[phi.var] = tuple(sorted(base + tuple(extra)))
                            if self.run(phi.body) == want:
                                return want
            finally:
                _restore(self.sets, phi.var, prev)
            return not want
        raise FormulaError(f"not a formula over (Q,<): {phi!r}")

    def pt(self, x: str) -> Fraction:
        if x not in self.points:
            raise FormulaError(f"unbound point variable {x}")
        return self.points[x]


_MISSING = object()


def _restore(env: dict, var: str, prev):
    if prev is _MISSING:
        env.pop(var, None)
    else:
        env[var] = prev


def decide(phi: Formula) -> bool:
    """Truth value of a closed formula in (ℚ,<)."""
    if free_vars(phi):
        raise FormulaError(f"formula has free variables {sorted(free_vars(phi))}")
    return eval(phi, EMPTY, max(qdepth(phi), 1))


def stability_probe(phi: Formula, caps: Sequence[int]) -> list[bool]:
    if free_vars(phi):
        raise FormulaError(f"formula has free variables {sorted(free_vars(phi))}")
    return [eval(phi, EMPTY, c) for c in caps]


def brute_eval(phi: Formula, a: Assignment, pool: Sequence[Fraction]) -> bool:
    """Reference evaluator isolating the set-quantifier cap rule.

    Point quantifiers use the same (complete) landmark-plus-gap rule as the
    engine; set quantifiers instead enumerate ALL subsets of the fixed pool
    together with the current landmarks, with no multiplicity cap.  Agreement
    with `eval` on the corpus is evidence for the cap rule, since that is the
    only place the two differ.
    """
    ev = _Brute(dict(a.points), dict(a.sets), tuple(sorted(set(pool))))
    return ev.run(phi)


class _Brute(_Eval):
    __slots__ = ("pool",)

    def __init__(self, points: dict, sets: dict, pool: tuple[Fraction, ...]):
        super().__init__(points, sets, cap=0)
        self.pool = pool

    def run(self, phi: Formula) -> bool:
        t = type(phi)
        if t is ExistsSet or t is ForallSet:
            want = t is ExistsSet
            prev = self.sets.get(phi.var, _MISSING)
            universe = sorted(set(self.pool) | set(self.landmarks()))
            try:
                for r in range(len(universe) + 1):
                    for s in combinations(universe, r):
                        self.sets[phi.var] = s
                        if self.run(phi.body) == want:
                            return want
            finally:
                _restore(self.sets, phi.var, prev)
            return not want
        return super().run(phi)
