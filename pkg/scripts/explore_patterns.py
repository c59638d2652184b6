#!/usr/bin/env python3
"""Enumerate orbital patterns at desk scale and summarize what is found:
how many canonical patterns exist, how the cofinal ones split into classes,
and which tail patterns admit the shift decomposition.

Usage: python scripts/explore_patterns.py [--core-max N] [--tail-max N]
"""

import argparse
from collections import Counter

from qwi.patterns import (
    canonical_pattern, classify_cofinal, enumerate_patterns, format_pattern,
    has_inf_orbitals, inf_formula_holds, lemma21_decompose,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--core-max", type=int, default=3)
    ap.add_argument("--tail-max", type=int, default=2)
    args = ap.parse_args()

    canon = {}
    for p in enumerate_patterns(args.core_max, args.tail_max):
        c = canonical_pattern(p)
        canon.setdefault(format_pattern(c), c)
    print(f"{len(canon)} canonical patterns "
          f"(core <= {args.core_max}, tails <= {args.tail_max})")

    classes = Counter()
    for c in canon.values():
        cls = classify_cofinal(c)
        if cls is not None:
            classes[cls] += 1
    print(f"\ncofinal patterns fall into {len(classes)} classes:")
    for cls, n in sorted(classes.items()):
        print(f"  {cls}: {n} patterns")

    tails = [c for c in canon.values() if has_inf_orbitals(c)]
    decomposable = [c for c in tails if lemma21_decompose(c) is not None]
    inf_true = sum(inf_formula_holds(c) for c in canon.values())
    print(f"\n{len(tails)} patterns with infinitely many orbitals, "
          f"{len(decomposable)} admit the tail-shift decomposition")
    print(f"{inf_true} patterns satisfy the pattern-level inf formula")


if __name__ == "__main__":
    main()
