"""Orbitals and orbital patterns: 3-coloured linear orders of moving/fixed
regions, with ω-tails for elements that only exist symbolically.

A pattern is a finite core of blocks plus an optional periodic word repeated
descending toward -∞ (left tail) and/or ascending toward +∞ (right tail).
Boundary kinds record whether a region edge is a rational, an irrational cut,
or an infinity; the consistency table below is the executable reconstruction
of which kinds may face each other.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence, Union

from .numbers import NEG_INF, POS_INF, QInterval, is_finite
from .plmap import PLMap

# boundary kinds
MINUS_INF = "minus_inf"
PLUS_INF = "plus_inf"
RATIONAL = "rational"
IRRATIONAL = "irrational"

# fixed-region order types
EMPTY = "empty"                  # two orbitals abutting at an irrational
SINGLETON = "singleton"          # one rational fixed point
NO_MIN_NO_MAX = "no_min_no_max"  # order type η
MIN_ONLY = "min_only"            # 1 + η
MAX_ONLY = "max_only"            # η + 1
MIN_AND_MAX = "min_and_max"      # 1 + η + 1

_HAS_MIN = {SINGLETON, MIN_ONLY, MIN_AND_MAX}
_HAS_MAX = {SINGLETON, MAX_ONLY, MIN_AND_MAX}


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Moving:
    parity: int  # +1 or -1
    left: str
    right: str

    def __post_init__(self):
        if self.parity not in (1, -1):
            raise PatternError(f"moving parity must be ±1, got {self.parity}")
        if self.left not in (MINUS_INF, RATIONAL, IRRATIONAL):
            raise PatternError(f"bad left boundary {self.left}")
        if self.right not in (PLUS_INF, RATIONAL, IRRATIONAL):
            raise PatternError(f"bad right boundary {self.right}")


@dataclass(frozen=True)
class Fixed:
    kind: str

    def __post_init__(self):
        if self.kind not in (EMPTY, SINGLETON, NO_MIN_NO_MAX, MIN_ONLY, MAX_ONLY, MIN_AND_MAX):
            raise PatternError(f"bad fixed-region kind {self.kind}")

    @property
    def has_min(self) -> bool:
        return self.kind in _HAS_MIN

    @property
    def has_max(self) -> bool:
        return self.kind in _HAS_MAX


Block = Union[Moving, Fixed]


@dataclass(frozen=True)
class Orbital:
    interval: QInterval
    parity: int


def fixed_kind(has_min: bool, has_max: bool) -> str:
    if has_min and has_max:
        return MIN_AND_MAX
    if has_min:
        return MIN_ONLY
    if has_max:
        return MAX_ONLY
    return NO_MIN_NO_MAX


# ---------------------------------------------------------------------------
# consistency table
#
# Reading left to right, a Moving block's right boundary faces the min side
# of the next Fixed region, and a Fixed region's max side faces the next
# Moving block's left boundary.  A closed side forces the facing boundary
# rational (it *is* that rational); an open side of a bounded region has an
# irrational cut; EMPTY forces irrational on both sides.  The four
# rationality combinations of an orbital's endpoints are exactly the cases
# this table distinguishes.
# ---------------------------------------------------------------------------

def _fixed_left_ok(m_right: str, f: Fixed) -> bool:
    if m_right == RATIONAL:
        return f.has_min
    if m_right == IRRATIONAL:
        return not f.has_min
    return False  # PLUS_INF cannot face anything


def _fixed_right_ok(f: Fixed, m_left: str) -> bool:
    if m_left == RATIONAL:
        return f.has_max
    if m_left == IRRATIONAL:
        return not f.has_max
    return False  # MINUS_INF cannot face anything


def _adjacent_ok(a: Block, b: Block) -> bool:
    if isinstance(a, Moving) and isinstance(b, Fixed):
        return _fixed_left_ok(a.right, b)
    if isinstance(a, Fixed) and isinstance(b, Moving):
        return _fixed_right_ok(a, b.left)
    return False  # Moving/Moving (use Fixed(EMPTY)) and Fixed/Fixed merge


def _left_edge_ok(b: Block) -> bool:
    if isinstance(b, Moving):
        return b.left == MINUS_INF
    return b.kind in (NO_MIN_NO_MAX, MAX_ONLY)


def _right_edge_ok(b: Block) -> bool:
    if isinstance(b, Moving):
        return b.right == PLUS_INF
    return b.kind in (NO_MIN_NO_MAX, MIN_ONLY)


def _interior_ok(b: Block) -> bool:
    """May b occur inside a tail word (repeated, never touching an end)?"""
    if isinstance(b, Moving):
        return b.left != MINUS_INF and b.right != PLUS_INF
    return True


@dataclass(frozen=True)
class OrbitalPattern:
    left_tail: Optional[tuple[Block, ...]]
    core: tuple[Block, ...]
    right_tail: Optional[tuple[Block, ...]]

    def blocks(self) -> tuple[Block, ...]:
        """Core blocks only; tails are accessed separately."""
        return self.core

    def __repr__(self):
        return format_pattern(self)


def make_pattern(core: Sequence[Block],
                 left_tail: Optional[Sequence[Block]] = None,
                 right_tail: Optional[Sequence[Block]] = None) -> OrbitalPattern:
    p = OrbitalPattern(
        tuple(left_tail) if left_tail is not None else None,
        tuple(core),
        tuple(right_tail) if right_tail is not None else None,
    )
    validate_pattern(p)
    return p


def pattern_is_valid(p: OrbitalPattern) -> bool:
    try:
        validate_pattern(p)
        return True
    except PatternError:
        return False


def validate_pattern(p: OrbitalPattern) -> None:
    p = _collapse_trivial_tails(p)
    lt, core, rt = p.left_tail, p.core, p.right_tail
    if lt is not None and not lt:
        raise PatternError("empty left tail word")
    if rt is not None and not rt:
        raise PatternError("empty right tail word")
    if not core and lt is None and rt is None:
        raise PatternError("pattern denotes nothing")
    for word in (lt, rt):
        if word is None:
            continue
        for b in word:
            if not _interior_ok(b):
                raise PatternError(f"tail block {b} touches an infinity")
        for a, b in zip(word, word[1:]):
            if not _adjacent_ok(a, b):
                raise PatternError(f"inconsistent tail adjacency {a} | {b}")
        if not _adjacent_ok(word[-1], word[0]):
            raise PatternError(f"inconsistent tail seam {word[-1]} | {word[0]}")
    for a, b in zip(core, core[1:]):
        if not _adjacent_ok(a, b):
            raise PatternError(f"inconsistent adjacency {a} | {b}")
    # ends of the whole pattern
    if lt is None:
        leftmost = core[0] if core else (rt[0] if rt else None)
        if leftmost is not None and not _left_edge_ok(leftmost):
            raise PatternError(f"{leftmost} cannot be the leftmost block")
    else:
        nxt = core[0] if core else (rt[0] if rt else lt[0])
        if not _adjacent_ok(lt[-1], nxt):
            raise PatternError(f"inconsistent seam {lt[-1]} | {nxt}")
    if rt is None:
        rightmost = core[-1] if core else (lt[-1] if lt else None)
        if rightmost is not None and not _right_edge_ok(rightmost):
            raise PatternError(f"{rightmost} cannot be the rightmost block")
    else:
        prev = core[-1] if core else (lt[-1] if lt else rt[-1])
        if not _adjacent_ok(prev, rt[0]):
            raise PatternError(f"inconsistent seam {prev} | {rt[0]}")
    if lt is not None and rt is not None and not core:
        if not _adjacent_ok(lt[-1], rt[0]):
            raise PatternError(f"inconsistent seam {lt[-1]} | {rt[0]}")


# ---------------------------------------------------------------------------
# canonical form and isomorphism
# ---------------------------------------------------------------------------

def _merge_fixed(a: Fixed, b: Fixed) -> Fixed:
    """The single region obtained when a and b are forced together."""
    return Fixed(fixed_kind(a.has_min, b.has_max))


def _collapse_trivial_tails(p: OrbitalPattern) -> OrbitalPattern:
    """A tail word without any Moving block denotes one big fixed region
    running to the infinity on that side; fold it into the core."""
    lt, core, rt = p.left_tail, list(p.core), p.right_tail
    if rt is not None and not any(isinstance(b, Moving) for b in rt):
        merged = Fixed(fixed_kind(rt[0].has_min if isinstance(rt[0], Fixed) else False, False))
        if core and isinstance(core[-1], Fixed):
            merged = Fixed(fixed_kind(core[-1].has_min, False))
            core.pop()
        core.append(merged)
        rt = None
    if lt is not None and not any(isinstance(b, Moving) for b in lt):
        merged = Fixed(fixed_kind(False, lt[-1].has_max if isinstance(lt[-1], Fixed) else False))
        if core and isinstance(core[0], Fixed):
            merged = Fixed(fixed_kind(False, core[0].has_max))
            core.pop(0)
        core.insert(0, merged)
        lt = None
    return OrbitalPattern(lt, tuple(core), rt)


def _primitive(word: tuple[Block, ...]) -> tuple[Block, ...]:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


def canonical_pattern(p: OrbitalPattern) -> OrbitalPattern:
    p = _collapse_trivial_tails(p)
    lt = _primitive(p.left_tail) if p.left_tail is not None else None
    rt = _primitive(p.right_tail) if p.right_tail is not None else None
    core = list(p.core)
    if rt is not None:
        # absorb a maximal run of the core into the periodic part
        while core and core[-1] == rt[-1]:
            core.pop()
            rt = rt[-1:] + rt[:-1]
    if lt is not None:
        while core and core[0] == lt[0]:
            core.pop(0)
            lt = lt[1:] + lt[:1]
    return OrbitalPattern(lt, tuple(core), rt)


def pattern_iso(p: OrbitalPattern, q: OrbitalPattern) -> bool:
    """Isomorphism of the denoted 3-coloured linear orders."""
    return canonical_pattern(p) == canonical_pattern(q)


# ---------------------------------------------------------------------------
# patterns of executable maps
# ---------------------------------------------------------------------------

def orbitals_of(f: PLMap) -> list[Orbital]:
    """Non-trivial orbitals of f in increasing order."""
    return [Orbital(iv, s) for iv, s in f.signed_support()]


def _boundary_kind(x) -> str:
    if x is NEG_INF:
        return MINUS_INF
    if x is POS_INF:
        return PLUS_INF
    return RATIONAL


def _fixed_block(lo, hi) -> Fixed:
    if lo == hi:
        return Fixed(SINGLETON)
    return Fixed(fixed_kind(is_finite(lo), is_finite(hi)))


def pattern_of(f: PLMap) -> OrbitalPattern:
    """Finite orbital pattern of an executable element (never has tails)."""
    items: list[tuple] = [("fix", lo, hi) for lo, hi in f.fixed_items()]
    items += [("mov", iv.lo, iv.hi, s) for iv, s in f.signed_support()]
    items.sort(key=lambda it: _pos_key(it[1]))
    blocks: list[Block] = []
    for it in items:
        if it[0] == "fix":
            blocks.append(_fixed_block(it[1], it[2]))
        else:
            blocks.append(Moving(it[3], _boundary_kind(it[1]), _boundary_kind(it[2])))
    return make_pattern(blocks)


def _pos_key(x):
    if not is_finite(x):
        return (x.sign, Fraction(0))
    return (0, x)


# ---------------------------------------------------------------------------
# cofinal classification
# ---------------------------------------------------------------------------

def classify_cofinal(p: OrbitalPattern) -> Optional[tuple[int, str, str]]:
    """(parity, side, endpoint-rationality) for a cofinal bump, else None.

    A cofinal bump has one non-trivial orbital whose support is bounded on
    exactly one side; 8 classes in total.
    """
    c = canonical_pattern(p)
    if c.left_tail is not None or c.right_tail is not None:
        return None
    blocks = c.core
    if len(blocks) != 2:
        return None
    if isinstance(blocks[0], Fixed) and isinstance(blocks[1], Moving):
        f, m = blocks
        if m.right != PLUS_INF or m.left in (MINUS_INF, PLUS_INF):
            return None
        return (m.parity, "right", "rational" if m.left == RATIONAL else "irrational")
    if isinstance(blocks[0], Moving) and isinstance(blocks[1], Fixed):
        m, f = blocks
        if m.left != MINUS_INF or m.right in (MINUS_INF, PLUS_INF):
            return None
        return (m.parity, "left", "rational" if m.right == RATIONAL else "irrational")
    return None


# ---------------------------------------------------------------------------
# restrictions: dropping orbitals from a pattern
# ---------------------------------------------------------------------------

def moving_indices(blocks: Sequence[Block]) -> list[int]:
    return [i for i, b in enumerate(blocks) if isinstance(b, Moving)]


def remove_moving(blocks: Sequence[Block], i: int) -> tuple[Block, ...]:
    """Pattern blocks after the i-th block (a Moving one) becomes fixed.

    Its points merge with the neighbouring fixed regions into one region.
    """
    m = blocks[i]
    assert isinstance(m, Moving)
    left = blocks[i - 1] if i > 0 else None
    right = blocks[i + 1] if i + 1 < len(blocks) else None
    has_min = left.has_min if isinstance(left, Fixed) else False
    has_max = right.has_max if isinstance(right, Fixed) else False
    merged = Fixed(fixed_kind(has_min, has_max))
    lo = i - 1 if left is not None else i
    hi = i + 2 if right is not None else i + 1
    return tuple(blocks[:lo]) + (merged,) + tuple(blocks[hi:])


def restrict_core(blocks: Sequence[Block], keep: Sequence[int]) -> tuple[Block, ...]:
    """Keep only the Moving blocks with the given indices; the rest of the
    line becomes fixed."""
    out = tuple(blocks)
    for i in sorted(set(moving_indices(blocks)) - set(keep), reverse=True):
        out = remove_moving(out, i)
    return out


def has_inf_orbitals(p: OrbitalPattern) -> bool:
    for word in (p.left_tail, p.right_tail):
        if word is not None and any(isinstance(b, Moving) for b in word):
            return True
    return False


# ---------------------------------------------------------------------------
# Lemma 2.1-style decomposition of ω-tail patterns
# ---------------------------------------------------------------------------

def mirror_pattern(p: OrbitalPattern) -> OrbitalPattern:
    """Order-reversal of the pattern (parities kept as labels)."""
    def mb(b: Block) -> Block:
        if isinstance(b, Fixed):
            return Fixed(fixed_kind(b.has_max, b.has_min))
        swap = {MINUS_INF: PLUS_INF, PLUS_INF: MINUS_INF,
                RATIONAL: RATIONAL, IRRATIONAL: IRRATIONAL}
        return Moving(b.parity, swap[b.right], swap[b.left])

    def mw(word):
        return None if word is None else tuple(mb(b) for b in reversed(word))

    return OrbitalPattern(mw(p.right_tail), tuple(mb(b) for b in reversed(p.core)),
                          mw(p.left_tail))


def lemma21_decompose(p: OrbitalPattern) -> Optional[tuple[Moving, OrbitalPattern, OrbitalPattern]]:
    """For a pattern with ω-many orbitals, a restriction g that splits as an
    orbital g1 times a remainder g2 with g ≅ g2.

    The restriction keeps one class of identical orbitals from a tail word
    (the thinning-out step: uniform parity, uniform endpoint kinds) so that
    dropping the first one is a shift of the ω-sequence.
    """
    if not has_inf_orbitals(p):
        raise PatternError("pattern has finitely many orbitals")
    c = canonical_pattern(p)
    if c.right_tail is not None:
        return _decompose_right(c.right_tail)
    m = mirror_pattern(c)
    res = _decompose_right(m.right_tail)
    if res is None:
        return None
    g1, g2, g = res
    return (_mirror_moving(g1), mirror_pattern(g2), mirror_pattern(g))


def _mirror_moving(m: Moving) -> Moving:
    swap = {MINUS_INF: PLUS_INF, PLUS_INF: MINUS_INF,
            RATIONAL: RATIONAL, IRRATIONAL: IRRATIONAL}
    return Moving(m.parity, swap[m.right], swap[m.left])


def _decompose_right(word: tuple[Block, ...]) -> Optional[tuple[Moving, OrbitalPattern, OrbitalPattern]]:
    cls = next(b for b in word if isinstance(b, Moving))
    n = len(word)
    idx = [i for i, b in enumerate(word) if b == cls]
    # thinned period: one block of the class, then the merged region up to
    # its next occurrence (cyclically), for each occurrence
    thin: list[Block] = []
    for j, i in enumerate(idx):
        nxt = idx[(j + 1) % len(idx)]
        span = (nxt - i) % n or n
        seg = [word[(i + 1 + t) % n] for t in range(span - 1)]
        thin.append(cls)
        thin.append(_merged_segment(seg))
    gword = tuple(thin)
    initial = Fixed(fixed_kind(False, cls.left == RATIONAL))
    g = make_pattern([initial], right_tail=gword)
    # g2: the first orbital of the tail becomes fixed
    after_first = gword[1]
    initial2 = Fixed(fixed_kind(False, after_first.has_max))
    g2 = make_pattern([initial2], right_tail=gword[2:] + gword[:2])
    return (cls, g2, g)


def _merged_segment(seg: Sequence[Block]) -> Fixed:
    """Merge a run of blocks (fixed regions and dropped orbitals) into the
    single fixed region they become."""
    if all(isinstance(b, Fixed) and b.kind == EMPTY for b in seg):
        return Fixed(EMPTY)
    first, last = seg[0], seg[-1]
    has_min = first.has_min if isinstance(first, Fixed) else False
    has_max = last.has_max if isinstance(last, Fixed) else False
    return Fixed(fixed_kind(has_min, has_max))


# ---------------------------------------------------------------------------
# the `inf` formula at pattern level
# ---------------------------------------------------------------------------

def inf_formula_holds(p: OrbitalPattern, search_bound: int = 8) -> bool:
    """Does p admit a restriction y with orbital y1 such that y ≅ y minus y1?

    Restrictions are searched in order of increasing size; for ω-tail
    patterns the thinned tail-shift witness is produced by
    `lemma21_decompose`, for finite patterns the search is exhaustive.
    """
    if has_inf_orbitals(p):
        res = lemma21_decompose(p)
        if res is not None:
            g1, g2, g = res
            if pattern_iso(g, g2):
                return True
        return False
    c = canonical_pattern(p)
    mov = moving_indices(c.core)
    subsets = _subsets_by_size(mov, search_bound)
    for keep in subsets:
        if not keep:
            continue
        y = restrict_core(c.core, keep)
        for i in moving_indices(y):
            y2 = remove_moving(y, i)
            if pattern_iso(make_pattern(y), make_pattern(y2)):
                return True
    return False


def _subsets_by_size(items: list[int], bound: int) -> Iterator[tuple[int, ...]]:
    from itertools import combinations
    for k in range(1, min(len(items), bound) + 1):
        yield from combinations(items, k)


# ---------------------------------------------------------------------------
# exhaustive enumeration (desk-scale verification)
# ---------------------------------------------------------------------------

_INTERIOR_MOVING = [Moving(p, l, r) for p in (1, -1)
                    for l in (RATIONAL, IRRATIONAL) for r in (RATIONAL, IRRATIONAL)]
_ALL_FIXED = [Fixed(k) for k in (EMPTY, SINGLETON, NO_MIN_NO_MAX, MIN_ONLY, MAX_ONLY, MIN_AND_MAX)]


def _core_block_choices(leftmost: bool) -> list[Block]:
    moving = [Moving(p, l, r) for p in (1, -1)
              for l in ((MINUS_INF,) if leftmost else (MINUS_INF, RATIONAL, IRRATIONAL))
              for r in (RATIONAL, IRRATIONAL, PLUS_INF)]
    return moving + _ALL_FIXED


def enumerate_cores(max_len: int) -> Iterator[tuple[Block, ...]]:
    """All consistency-valid finite cores (as tail-less patterns) up to
    max_len blocks."""
    def extend(seq: list[Block]):
        if seq and _right_edge_ok(seq[-1]):
            yield tuple(seq)
        if len(seq) == max_len:
            return
        for b in _core_block_choices(leftmost=not seq):
            if seq and not _adjacent_ok(seq[-1], b):
                continue
            if not seq and not _left_edge_ok(b):
                continue
            seq.append(b)
            yield from extend(seq)
            seq.pop()

    yield from extend([])


def enumerate_tail_words(max_len: int) -> Iterator[tuple[Block, ...]]:
    """All consistency-valid tail words up to max_len blocks (cyclic
    adjacency; all-fixed words allowed, they collapse to a plain region)."""
    for n in range(1, max_len + 1):
        for combo in product(_INTERIOR_MOVING + _ALL_FIXED, repeat=n):
            if n == 1 and isinstance(combo[0], Fixed):
                yield combo
                continue
            ok = all(_adjacent_ok(a, b) for a, b in zip(combo, combo[1:]))
            if ok and _adjacent_ok(combo[-1], combo[0]):
                yield combo


def enumerate_patterns(core_max: int, tail_max: int) -> Iterator[OrbitalPattern]:
    """Exhaustive valid patterns: every core alone, and every core with each
    valid single- or double-tail attachment."""
    tails = [None] + list(enumerate_tail_words(tail_max))
    cores = list(enumerate_cores(core_max))
    for core in cores:
        for lt in tails:
            for rt in tails:
                p = OrbitalPattern(lt, core, rt)
                if pattern_is_valid(p):
                    yield p
    # tail-only patterns
    for lt in tails:
        for rt in tails:
            if lt is None and rt is None:
                continue
            p = OrbitalPattern(lt, (), rt)
            if pattern_is_valid(p):
                yield p


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

_KIND_TOK = {MINUS_INF: "-inf", PLUS_INF: "inf", RATIONAL: "rat", IRRATIONAL: "irr"}
_KIND_FROM = {v: k for k, v in _KIND_TOK.items()}
_FIX_TOK = {EMPTY: "empty", SINGLETON: "single", NO_MIN_NO_MAX: "open",
            MIN_ONLY: "min", MAX_ONLY: "max", MIN_AND_MAX: "minmax"}
_FIX_FROM = {v: k for k, v in _FIX_TOK.items()}


def _format_block(b: Block) -> str:
    if isinstance(b, Moving):
        sign = "+" if b.parity > 0 else "-"
        return f"M({sign},{_KIND_TOK[b.left]},{_KIND_TOK[b.right]})"
    return f"F({_FIX_TOK[b.kind]})"


def format_pattern(p: OrbitalPattern) -> str:
    parts = ["pattern"]
    if p.left_tail is not None:
        parts.append("ltail=[" + " ".join(map(_format_block, p.left_tail)) + "]")
    parts.append("core=[" + " ".join(map(_format_block, p.core)) + "]")
    if p.right_tail is not None:
        parts.append("rtail=[" + " ".join(map(_format_block, p.right_tail)) + "]")
    return " ".join(parts)


_BLOCK_RE = re.compile(r"M\(([+-]),([^,)]+),([^,)]+)\)|F\(([a-z_]+)\)")


def _parse_blocks(text: str) -> tuple[Block, ...]:
    out: list[Block] = []
    for tok in text.split():
        m = _BLOCK_RE.fullmatch(tok)
        if not m:
            raise PatternError(f"bad block {tok!r}")
        if m.group(4):
            if m.group(4) not in _FIX_FROM:
                raise PatternError(f"bad fixed kind {m.group(4)!r}")
            out.append(Fixed(_FIX_FROM[m.group(4)]))
        else:
            sign = 1 if m.group(1) == "+" else -1
            try:
                out.append(Moving(sign, _KIND_FROM[m.group(2)], _KIND_FROM[m.group(3)]))
            except KeyError as exc:
                raise PatternError(f"bad boundary kind in {tok!r}") from None
    return tuple(out)


_PAT_RE = re.compile(
    r"^pattern\s+(?:ltail=\[(?P<lt>[^\]]*)\]\s+)?core=\[(?P<core>[^\]]*)\]"
    r"(?:\s+rtail=\[(?P<rt>[^\]]*)\])?\s*$"
)


def parse_pattern(text: str) -> OrbitalPattern:
    m = _PAT_RE.match(text.strip())
    if not m:
        raise PatternError(f"unparseable pattern: {text!r}")
    lt = _parse_blocks(m.group("lt")) if m.group("lt") is not None else None
    rt = _parse_blocks(m.group("rt")) if m.group("rt") is not None else None
    return make_pattern(_parse_blocks(m.group("core")), lt, rt)
