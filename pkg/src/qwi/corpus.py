"""Loader for the shipped corpus of hand-verified WMSO sentences."""

from __future__ import annotations

from importlib import resources


def load_corpus() -> list[tuple[bool, str, str]]:
    """(expected truth, formula text, note) per corpus line."""
    text = resources.files("qwi").joinpath("data/corpus.txt").read_text()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        truth, formula, note = line.split("\t")
        if truth not in ("true", "false"):
            raise ValueError(f"bad truth value {truth!r} in corpus line {line!r}")
        out.append((truth == "true", formula, note))
    return out
