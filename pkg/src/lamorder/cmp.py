"""Six-valued comparison verdicts and their list extensions.

G and L are proven strict comparisons, GE and LE proven nonstrict ones whose
strictness is unknown, E is syntactic equality and U means no claim.
"""

from __future__ import annotations

import enum
from typing import Callable, Sequence


class Cmp(enum.Enum):
    G = "G"
    GE = "GE"
    E = "E"
    LE = "LE"
    L = "L"
    U = "U"

    def __str__(self) -> str:
        return self.value


G, GE, E, LE, L, U = Cmp.G, Cmp.GE, Cmp.E, Cmp.LE, Cmp.L, Cmp.U

_FLIP = {G: L, GE: LE, E: E, LE: GE, L: G, U: U}


def flip(cmp: Cmp) -> Cmp:
    return _FLIP[cmp]


def merge_with_ge(cmp: Cmp) -> Cmp:
    """Combine a pending GE with the verdict for the remaining positions."""
    if cmp in (L, LE):
        return U
    if cmp is E:
        return GE
    return cmp


def merge_with_le(cmp: Cmp) -> Cmp:
    if cmp in (G, GE):
        return U
    if cmp is E:
        return LE
    return cmp


def smooth(cmp: Cmp) -> Cmp:
    """Weaken strict verdicts; componentwise extensions never prove strictness."""
    if cmp is G:
        return GE
    if cmp is L:
        return LE
    return cmp


def lex_ext(op: Callable, ts: Sequence, ss: Sequence) -> Cmp:
    """Left-to-right lexicographic extension of a six-valued comparison.

    Both lists must have the same length; empty lists compare E.
    """
    if len(ts) != len(ss):
        raise ValueError("lexicographic extension over unequal lengths: %d vs %d"
                         % (len(ts), len(ss)))
    for i in range(len(ts)):
        c = op(ts[i], ss[i])
        if c is G or c is L or c is U:
            return c
        if c is GE:
            return merge_with_ge(lex_ext(op, ts[i + 1:], ss[i + 1:]))
        if c is LE:
            return merge_with_le(lex_ext(op, ts[i + 1:], ss[i + 1:]))
        # E: keep scanning
    return E


def cw_ext(op: Callable, ts: Sequence, ss: Sequence) -> Cmp:
    """Componentwise (smoothed) extension: strict verdicts per position are
    weakened before the lexicographic merge."""
    return lex_ext(lambda b, a: smooth(op(b, a)), ts, ss)
