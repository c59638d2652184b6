#!/usr/bin/env python3
"""Round-trip the shipped corpus through the group interpretation and time
each sentence: direct WMSO truth vs. pullback of the compiled formula under
both orientation parameters.

Usage: python scripts/roundtrip_corpus.py
"""

import sys
import time

from qwi.corpus import load_corpus
from qwi.formulas import parse_wmso
from qwi.interp import pullback_eval, translate
from qwi.wmso import decide


def main() -> int:
    bad = 0
    t0 = time.monotonic()
    for truth, text, note in load_corpus():
        t1 = time.monotonic()
        phi = parse_wmso(text)
        psi = translate(phi)
        direct = decide(phi)
        right = pullback_eval(psi, orientation="right")
        left = pullback_eval(psi, orientation="left")
        ok = direct == right == left == truth
        bad += not ok
        mark = "ok " if ok else "BAD"
        print(f"{mark} {time.monotonic() - t1:6.2f}s "
              f"direct={direct!s:5} right={right!s:5} left={left!s:5}  {text}")
    print(f"\n{bad} mismatches, {time.monotonic() - t0:.1f}s total")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
