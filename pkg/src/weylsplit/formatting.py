"""Shared pretty-printing of sums of monomials."""

from __future__ import annotations

from typing import Iterable


def format_terms(pairs: Iterable[tuple[str, str]]) -> str:
    """Join (coefficient, monomial) strings as "c·m + c'·m' - m''"."""
    parts = []
    for cs, mono in pairs:
        if not mono:
            parts.append(cs)
        elif cs in ("1", "-1"):
            parts.append(cs[:-1] + mono)
        elif " " in cs:
            parts.append(f"({cs})·{mono}")
        else:
            parts.append(f"{cs}·{mono}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")
