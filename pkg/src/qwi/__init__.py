"""Exact workbench for the group of piecewise-linear order-automorphisms
of (ℚ,<): conjugacy via orbital patterns, semantic predicate oracles, a
WMSO evaluator over the rational line, and the interpretation of that
logic inside the group's first-order theory.
"""

__version__ = "0.1.0"

from .plmap import PLMap, format_pl, parse_pl
from .patterns import (
    OrbitalPattern, canonical_pattern, classify_cofinal, pattern_iso,
    pattern_of,
)
from .conjugacy import Conjugator, conjugating_witness, verify_conjugator
from .formulas import parse_group, parse_wmso, print_group, print_wmso
from .wmso import Assignment, decide
from .interp import (
    encode_finite_set, encode_rational, roundtrip_check, translate,
)

__all__ = [
    "PLMap", "format_pl", "parse_pl",
    "OrbitalPattern", "canonical_pattern", "classify_cofinal",
    "pattern_iso", "pattern_of",
    "Conjugator", "conjugating_witness", "verify_conjugator",
    "parse_group", "parse_wmso", "print_group", "print_wmso",
    "Assignment", "decide",
    "encode_finite_set", "encode_rational", "roundtrip_check", "translate",
]
