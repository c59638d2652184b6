"""Seeded verification suites behind `qwi verify`.

Each suite re-checks one layer's invariants at desk scale: group laws and
support covariance, the orbital-pattern conjugacy criterion with verified
witnesses, predicate-oracle coherence, the tail decomposition, the pattern
level `inf` formula, the eight cofinal classes, the WMSO engine against its
brute-force reference, the interpretation round-trip, and the literal-macro
discrepancy report.  Every suite is deterministic under its seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .numbers import QInterval, NEG_INF, POS_INF, is_finite
from .plmap import PLMap, format_pl
from .patterns import (
    canonical_pattern, classify_cofinal, enumerate_patterns, format_pattern,
    has_inf_orbitals, inf_formula_holds, lemma21_decompose, pattern_iso,
    pattern_of,
)
from .conjugacy import conjugating_witness, verify_conjugator
from .generators import gen_plmap_rnd, make_bump
from . import predicates as P
from .interp import pullback_eval, translate
from .formulas import parse_wmso, qdepth
from .wmso import Assignment, brute_eval, decide, stability_probe
from . import corpus as corpus_mod


@dataclass
class SuiteReport:
    suite: str
    cases: int
    failures: list[str]
    seed: int
    wall_time: float
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def machine_line(self) -> str:
        return f"{self.suite}\t{self.cases}\t{len(self.failures)}"

    def render(self) -> str:
        lines = [f"suite {self.suite}: {self.cases} cases, "
                 f"{len(self.failures)} failures, seed {self.seed}, "
                 f"{self.wall_time:.2f}s"]
        lines.extend(f"  note: {n}" for n in self.notes)
        lines.extend(f"  FAIL {f}" for f in self.failures)
        return "\n".join(lines)


def _rnd(name: str, seed: int) -> random.Random:
    return random.Random(f"{name}:{seed}")


# ---------------------------------------------------------------------------
# group-laws
# ---------------------------------------------------------------------------

def _suite_group_laws(seed: int, cases: int):
    rnd = _rnd("group-laws", seed)
    failures = []
    ident = PLMap.identity()
    for i in range(cases):
        f = gen_plmap_rnd(rnd, 6)
        g = gen_plmap_rnd(rnd, 6)
        h = gen_plmap_rnd(rnd, 6)

        def bad(law: str):
            failures.append(f"case {i}: {law} with f={format_pl(f)} "
                            f"g={format_pl(g)} h={format_pl(h)}")

        if f.compose(g).compose(h) != f.compose(g.compose(h)):
            bad("associativity")
        if f.compose(f.inverse()) != ident or f.inverse().compose(f) != ident:
            bad("inverse law")
        if f.compose(ident) != f or ident.compose(f) != f:
            bad("identity law")
        if f.inverse().inverse() != f:
            bad("double inverse")
        if f.compose(g).inverse() != g.inverse().compose(f.inverse()):
            bad("anti-homomorphism of inverse")
        # conjugation carries supports pointwise
        conj = f.conjugate_by(g)
        want = sorted((g.apply(iv.lo) if is_finite(iv.lo) else iv.lo,
                       g.apply(iv.hi) if is_finite(iv.hi) else iv.hi,
                       s)
                      for iv, s in f.signed_support())
        got = sorted((iv.lo, iv.hi, s) for iv, s in conj.signed_support())
        if want != got:
            bad("support covariance under conjugation")
        # restriction witnesses
        comps = [iv for iv, _ in f.signed_support()]
        if comps:
            keep = [iv for iv in comps if rnd.random() < 0.5]
            x = P.restrict_map(f, keep)
            z = P.restr_witness(x, f)
            if z is None or not P.disj_sem(x, z) or x.compose(z) != f:
                bad("restriction witness")
    return cases, failures, []


# ---------------------------------------------------------------------------
# orbitals: the conjugacy criterion with verified witnesses
# ---------------------------------------------------------------------------

def _suite_orbitals(seed: int, cases: int):
    rnd = _rnd("orbitals", seed)
    failures = []
    for i in range(cases):
        f = gen_plmap_rnd(rnd, 5)
        if rnd.random() < 0.5:
            g = f.conjugate_by(gen_plmap_rnd(rnd, 5))
        else:
            g = gen_plmap_rnd(rnd, 5)
        iso = pattern_iso(pattern_of(f), pattern_of(g))
        w = conjugating_witness(f, g)
        if (w is not None) != iso:
            failures.append(f"case {i}: witness presence {w is not None} but "
                            f"pattern_iso {iso}; f={format_pl(f)} g={format_pl(g)}")
        elif w is not None and not verify_conjugator(w, f, g):
            failures.append(f"case {i}: witness fails verification; "
                            f"f={format_pl(f)} g={format_pl(g)}")
    return cases, failures, []


# ---------------------------------------------------------------------------
# predicates: oracle coherence
# ---------------------------------------------------------------------------

def _suite_predicates(seed: int, cases: int):
    rnd = _rnd("predicates", seed)
    failures = []
    for i in range(cases):
        y = gen_plmap_rnd(rnd, 6)

        def bad(what: str, extra: str = ""):
            failures.append(f"case {i}: {what}; y={format_pl(y)} {extra}".rstrip())

        comps = y.signed_support()
        for iv, _ in comps:
            x = P.restrict_map(y, [iv])
            if not P.bump_sem(x):
                bad("component restriction is not a bump", f"iv={iv}")
            if not P.orbital_sem(x, y):
                bad("component restriction is not an orbital", f"iv={iv}")
            if not P.restr_sem(x, y) or not P.cont_sem(x, y):
                bad("orbital is not a contained restriction", f"iv={iv}")
        if P.coterm_sem(y) != (P.bump_sem(y) and y.support().is_full_line()):
            bad("coterm disagrees with full-line bump test")
        if P.cof_sem(y):
            a = P.cof_endpoint(y)
            (iv, _), = y.signed_support()
            other = (QInterval(NEG_INF, a) if is_finite(iv.lo)
                     else QInterval(a, POS_INF))
            mirror = make_bump(other)
            if not P.oppsupport_sem(y, mirror):
                bad("cofinal element fails oppsupport with its mirror")
            if not P.codesame_sem(y, mirror):
                bad("mirror encodes a different endpoint")
        z = gen_plmap_rnd(rnd, 6)
        if P.apart_sem(y, z) and not (y.support().is_empty() or
                                      z.support().is_empty()) \
                and y.support().intersects(z.support()):
            bad("apart elements with overlapping supports", f"z={format_pl(z)}")
        if P.disj_sem(y, z) != P.disj_sem(z, y):
            bad("disj is not symmetric", f"z={format_pl(z)}")
        if P.disj_sem(y, z) and y.compose(z) != z.compose(y):
            bad("disjoint elements fail to commute", f"z={format_pl(z)}")
    return cases, failures, []


# ---------------------------------------------------------------------------
# lemma21: tail decomposition
# ---------------------------------------------------------------------------

def _tail_patterns(core_max: int, tail_max: int):
    seen = set()
    for p in enumerate_patterns(core_max, tail_max):
        if not has_inf_orbitals(p):
            continue
        c = canonical_pattern(p)
        key = format_pattern(c)
        if key not in seen:
            seen.add(key)
            yield c


def _suite_lemma21(seed: int, cases: int):
    failures = []
    n = 0
    for p in _tail_patterns(3, 2):
        n += 1
        res = lemma21_decompose(p)
        if res is None:
            continue  # no shift-invariant thinning exists for this pattern
        g1, g2, g = res
        if not pattern_iso(g, g2):
            failures.append(f"pattern {format_pattern(p)}: decomposition "
                            f"g={format_pattern(g)} not isomorphic to "
                            f"g2={format_pattern(g2)}")
    return n, failures, []


# ---------------------------------------------------------------------------
# lemma22: the inf formula against its structural meaning
# ---------------------------------------------------------------------------

def _suite_lemma22(seed: int, cases: int):
    failures = []
    n = 0
    truth_seen = set()
    seen = set()
    for p in enumerate_patterns(3, 2):
        c = canonical_pattern(p)
        key = format_pattern(c)
        if key in seen:
            continue
        seen.add(key)
        n += 1
        want = has_inf_orbitals(c)
        got = inf_formula_holds(c)
        truth_seen.add(want)
        if got != want:
            failures.append(f"pattern {key}: inf formula {got}, "
                            f"infinitely many orbitals {want}")
    notes = []
    if truth_seen != {True, False}:
        failures.append(f"only truth values {truth_seen} exercised")
    return n, failures, notes


# ---------------------------------------------------------------------------
# classes8: the cofinal classes
# ---------------------------------------------------------------------------

def _suite_classes8(seed: int, cases: int):
    failures = []
    ids = {}
    n = 0
    for p in enumerate_patterns(3, 2):
        cls = classify_cofinal(canonical_pattern(p))
        if cls is None:
            continue
        n += 1
        ids.setdefault(cls, format_pattern(canonical_pattern(p)))
    if len(ids) != 8:
        failures.append(f"found {len(ids)} cofinal classes, expected 8: "
                        f"{sorted(ids)}")
    notes = [f"class {c}: e.g. {ex}" for c, ex in sorted(ids.items())]
    return n, failures, notes


# ---------------------------------------------------------------------------
# wmso: corpus truth, cap stability, brute-force agreement
# ---------------------------------------------------------------------------

def _suite_wmso(seed: int, cases: int):
    failures = []
    pool = [Fraction(-2), Fraction(-1), Fraction(0), Fraction(1, 2),
            Fraction(1), Fraction(3)]
    entries = corpus_mod.load_corpus()
    for truth, text, note in entries:
        phi = parse_wmso(text)
        d = qdepth(phi)
        got = decide(phi)
        if got != truth:
            failures.append(f"{text!r}: decided {got}, recorded {truth}")
            continue
        probe = stability_probe(phi, [max(d, 1), max(d, 1) + 1, max(d, 1) + 2])
        if len(set(probe)) != 1 or probe[0] != truth:
            failures.append(f"{text!r}: cap instability {probe}")
        if d <= 3 and brute_eval(phi, Assignment(), pool) != truth:
            failures.append(f"{text!r}: brute-force enumerator disagrees")
    return len(entries), failures, []


# ---------------------------------------------------------------------------
# roundtrip: the interpretation on the corpus, both orientations
# ---------------------------------------------------------------------------

def _suite_roundtrip(seed: int, cases: int):
    failures = []
    entries = corpus_mod.load_corpus()
    for truth, text, note in entries:
        phi = parse_wmso(text)
        psi = translate(phi)
        want = decide(phi)
        for side in ("right", "left"):
            got = pullback_eval(psi, orientation=side)
            if got != want:
                failures.append(f"{text!r}: pullback ({side} orientation) "
                                f"{got}, direct {want}")
    return len(entries), failures, []


# ---------------------------------------------------------------------------
# discrepancy: literal macros against the intended oracles
# ---------------------------------------------------------------------------

def _suite_discrepancy(seed: int, cases: int):
    failures = []
    notes = []
    x, y, lit, sem = P.cont_degeneracy_example()
    if not (lit and not sem):
        failures.append("cont degeneracy example did not reproduce")
    else:
        notes.append("expected finding: literal cont macro "
                     "(forall z: disj(y,z) -> disj(x,z)) is vacuously true "
                     "for dense-support y; e.g. "
                     f"x={format_pl(x)} y={format_pl(y)} "
                     f"literal={lit} oracle={sem}")
    hits = P.discrepancy_search("cont", max(cases // 4, 50), seed)
    notes.append(f"cont: literal diverges from oracle on "
                 f"{len(hits)}/{max(cases // 4, 50)} seeded instances "
                 "(expected, documented)")
    if not hits:
        failures.append("seeded search found no cont divergence")
    for macro in ("coterm", "cof", "oppsupport"):
        bad = P.discrepancy_search(macro, cases, seed)
        if bad:
            failures.append(f"{macro}: literal macro diverges from oracle "
                            f"on {len(bad)} instances, e.g. {bad[0]!r}")
        else:
            notes.append(f"{macro}: literal and oracle agree on "
                         f"{cases} seeded instances")
    total = 3 * cases + max(cases // 4, 50) + 1
    return total, failures, notes


_SUITES = {
    "group-laws": (_suite_group_laws, 300),
    "orbitals": (_suite_orbitals, 200),
    "predicates": (_suite_predicates, 200),
    "lemma21": (_suite_lemma21, 0),
    "lemma22": (_suite_lemma22, 0),
    "classes8": (_suite_classes8, 0),
    "wmso": (_suite_wmso, 0),
    "roundtrip": (_suite_roundtrip, 0),
    "discrepancy": (_suite_discrepancy, 200),
}

SUITE_NAMES = list(_SUITES) + ["all"]


def run_suite(name: str, seed: int = 0, cases: int | None = None) -> list[SuiteReport]:
    """Run one suite (or `all`); returns one report per suite executed."""
    if name == "all":
        out = []
        for n in _SUITES:
            out.extend(run_suite(n, seed, cases))
        return out
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    fn, default_cases = _SUITES[name]
    n_cases = default_cases if cases is None else cases
    t0 = time.monotonic()
    ran, failures, notes = fn(seed, n_cases)
    return [SuiteReport(name, ran, failures, seed, time.monotonic() - t0, notes)]
