"""Rank of sparse matrices over Q(s).

Rows are mappings column -> Scalar.  ``rank_exact`` eliminates in Q(s)
itself; ``rank_mod_p`` specialises s to an integer and works modulo a word
size prime.  Specialising can only lower the rank, so a specialised rank
that meets an a-priori upper bound is the exact rank.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from flint import nmod_mat

from .scalar import Scalar

PRIME = 2**61 - 1
SAMPLE_POINTS = (1009, 7919, 104729)


def columns_of(rows: Iterable[Mapping]) -> list:
    seen = {}
    for r in rows:
        for c in r:
            seen.setdefault(c, len(seen))
    return list(seen)


def rank_exact(rows: Iterable[Mapping]) -> int:
    """Row echelon form over Q(s); rows are not modified."""
    order: dict = {}
    pivots: dict = {}
    for r in rows:
        row = {c: v for c, v in r.items() if v}
        for c in row:
            order.setdefault(c, len(order))
        while row:
            lead = min(row, key=order.__getitem__)
            piv = pivots.get(lead)
            if piv is None:
                inv = row[lead].inverse()
                pivots[lead] = {c: v * inv for c, v in row.items()}
                break
            f = row[lead]
            for c, v in piv.items():
                nv = row.get(c, Scalar(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def specialize(x: Scalar, s0: int, p: int = PRIME) -> int:
    num = int(x.num(s0)) % p
    den = int(x.den(s0)) % p
    if den == 0:
        raise ZeroDivisionError(f"denominator of {x} vanishes at s = {s0} mod {p}")
    return num * pow(den, -1, p) % p


def rank_mod_p(rows: list[Mapping], s0: int = SAMPLE_POINTS[0], p: int = PRIME) -> int:
    rows = list(rows)
    cols = columns_of(rows)
    if not rows or not cols:
        return 0
    idx = {c: i for i, c in enumerate(cols)}
    flat = [0] * (len(rows) * len(cols))
    for i, r in enumerate(rows):
        base = i * len(cols)
        for c, v in r.items():
            flat[base + idx[c]] = specialize(v, s0, p)
    return nmod_mat(len(rows), len(cols), flat, p).rank()


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    exact: bool
    method: str
    lower: int
    upper: int


def certified_rank(rows: list[Mapping], upper: int | None = None, *, exact_fallback: bool = True) -> RankCertificate:
    """Rank with a statement of how it was established.

    ``upper`` is a known upper bound (defaults to min(#rows, #columns)).
    """
    rows = list(rows)
    bound = min(len(rows), len(columns_of(rows)))
    upper = bound if upper is None else min(upper, bound)
    lower = 0
    for s0 in SAMPLE_POINTS:
        try:
            lower = max(lower, rank_mod_p(rows, s0))
        except ZeroDivisionError:
            continue
        if lower == upper:
            return RankCertificate(lower, True, f"specialisation s={s0} mod {PRIME} meets upper bound", lower, upper)
    if exact_fallback:
        r = rank_exact(rows)
        return RankCertificate(r, True, "elimination over Q(s)", lower, upper)
    return RankCertificate(lower, False, "specialisation lower bound only", lower, upper)
