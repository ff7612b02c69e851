"""Streaming enumeration of fb-tableaux, counting formulas and bracket vectors.

Tableaux are generated in lexicographic order on (up_row, left_col, dot
bitmask).  Arrow configurations are produced directly from the validity
constraints, so no invalid candidate is ever materialized; the dot sets
of a fixed arrow configuration form an independent power set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from . import order
from .tableau import BORDER_RANK, FbTableau

CLASS_ALL = "all"
CLASS_SMALL = "small"
CLASS_BINARY = "binary"


class BadBorder(ValueError):
    pass


class NotBinary(ValueError):
    pass


class NotBracketVector(ValueError):
    pass


def fb_count(n: int) -> int:
    """Number of fb-tableaux of size n: the product of 2^i - 1, i = 1..n."""
    out = 1
    for i in range(1, n + 1):
        out *= (1 << i) - 1
    return out


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def count_tableaux(n: int, cls: str = CLASS_ALL) -> int:
    """Closed-form count for a tableau class."""
    if cls == CLASS_ALL:
        return fb_count(n)
    if cls == CLASS_SMALL:
        return math.factorial(n)
    if cls == CLASS_BINARY:
        return catalan(n)
    raise ValueError(f"unknown class {cls!r}")


def _arrow_configs(n: int, small: bool) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Valid (up_row, left_col) pairs in lexicographic order."""
    if n == 1:
        yield (), ()
        return
    for up in product(*(range(1, j + 2) for j in range(1, n))):
        rightmost_up = [0] * (n + 1)
        for j in range(1, n):
            r = up[j - 1]
            if j > rightmost_up[r]:
                rightmost_up[r] = j
        choices = []
        for i in range(2, n + 1):
            if small and up[i - 2] != i:
                # No border up-arrow, so the border must hold the left-arrow.
                allowed = [i - 1] if rightmost_up[i] < i - 1 else []
            else:
                lo = max(i - 1, rightmost_up[i] + 1)
                allowed = [c for c in range(lo, n) if up[c - 1] < i]
                allowed.append(n)
            if not allowed:
                break
            choices.append(allowed)
        else:
            for left in product(*choices):
                yield up, left


def _dot_subsets(mask: int) -> Iterator[int]:
    """Subsets of a bitmask in increasing numeric order."""
    s = 0
    while True:
        yield s
        if s == mask:
            return
        s = (s - mask) & mask


def tableaux(n: int, cls: str = CLASS_ALL, border: str | None = None) -> Iterator[FbTableau]:
    """Stream every tableau of the class exactly once, in canonical order."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    if cls not in (CLASS_ALL, CLASS_SMALL, CLASS_BINARY):
        raise ValueError(f"unknown class {cls!r}")
    if border is not None:
        if len(border) != n - 1 or any(ch not in BORDER_RANK for ch in border):
            raise BadBorder(f"border must be a word of length {n - 1} over ^ o <")
    small = cls in (CLASS_SMALL, CLASS_BINARY)
    for up, left in _arrow_configs(n, small):
        base = FbTableau(n, up, left, 0)
        if cls == CLASS_BINARY and base.free_mask:
            continue
        if small:
            if border is None or base.border_word() == border:
                yield base
            continue
        for dots in _dot_subsets(base.free_mask):
            t = FbTableau(n, up, left, dots) if dots else base
            if border is None or t.border_word() == border:
                yield t


def is_bracket_vector(v: tuple[int, ...], n: int) -> bool:
    """The two defining inequalities for bracket vectors of length n-1."""
    if len(v) != n - 1:
        return False
    for i in range(1, n):
        a = v[i - 1]
        if not 0 <= a <= n - i:
            return False
        for j in range(1, a + 1):
            if i + j <= n - 1 and j + v[i + j - 1] > a:
                return False
    return True


def bracket_vectors(n: int) -> Iterator[tuple[int, ...]]:
    """All bracket vectors of length n-1 by brute filtering of integer tuples."""
    for v in product(*(range(n - i + 1) for i in range(1, n))):
        if is_bracket_vector(v, n):
            yield v


def bracket_of(t: FbTableau) -> tuple[int, ...]:
    """Bracket vector of a binary tableau: entry i counts the non-border
    cells of column n-i weakly below its up-arrow."""
    if not t.is_binary():
        raise NotBinary("bracket vectors are defined for binary tableaux only")
    n = t.n
    return tuple((n - i + 1) - t.up_row[n - i - 1] for i in range(1, n))


def tableau_of_bracket(v: tuple[int, ...], n: int | None = None) -> FbTableau:
    """The binary tableau with the given bracket vector."""
    if n is None:
        n = len(v) + 1
    if not is_bracket_vector(tuple(v), n):
        raise NotBracketVector(f"{v!r} is not a bracket vector of length {n - 1}")
    up = tuple(c + 1 - v[n - c - 1] for c in range(1, n))
    left = tuple(order._left_arrow_slot(up, n, i, i - 1) for i in range(2, n + 1))
    t = FbTableau.from_components(n, up, left, ())
    if not t.is_binary():
        raise NotBracketVector(f"{v!r} does not produce a binary tableau")
    return t


@dataclass
class BorderQuotientReport:
    """Brute-force verification that the border map is a lattice quotient
    onto the product of n-1 three-element chains."""

    n: int
    surjective: bool
    meet_homomorphism: bool
    join_homomorphism: bool
    fibers_are_intervals: bool
    fiber_sizes: dict[str, int]

    @property
    def ok(self) -> bool:
        return (
            self.surjective
            and self.meet_homomorphism
            and self.join_homomorphism
            and self.fibers_are_intervals
        )


def _border_min(a: str, b: str) -> str:
    return "".join(x if BORDER_RANK[x] <= BORDER_RANK[y] else y for x, y in zip(a, b))


def _border_max(a: str, b: str) -> str:
    return "".join(x if BORDER_RANK[x] >= BORDER_RANK[y] else y for x, y in zip(a, b))


def border_quotient_check(n: int) -> BorderQuotientReport:
    elements = list(tableaux(n))
    fibers: dict[str, list[FbTableau]] = {}
    for t in elements:
        fibers.setdefault(t.border_word(), []).append(t)
    surjective = len(fibers) == 3 ** (n - 1)
    meet_ok = join_ok = True
    for s in elements:
        ws = s.border_word()
        for t in elements:
            wt = t.border_word()
            if order.meet(s, t).border_word() != _border_min(ws, wt):
                meet_ok = False
            if order.join(s, t).border_word() != _border_max(ws, wt):
                join_ok = False
    intervals_ok = True
    bounds = {}
    for word, members in fibers.items():
        lo = hi = members[0]
        for t in members[1:]:
            lo = order.meet(lo, t)
            hi = order.join(hi, t)
        if lo.border_word() != word or hi.border_word() != word:
            intervals_ok = False
        bounds[word] = (lo, hi)
    for t in elements:
        for word, (lo, hi) in bounds.items():
            if order.leq(lo, t) and order.leq(t, hi) and t.border_word() != word:
                intervals_ok = False
    return BorderQuotientReport(
        n=n,
        surjective=surjective,
        meet_homomorphism=meet_ok,
        join_homomorphism=join_ok,
        fibers_are_intervals=intervals_ok,
        fiber_sizes={w: len(members) for w, members in sorted(fibers.items())},
    )
