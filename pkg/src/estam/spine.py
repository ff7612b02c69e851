"""Spine membership and the counting recurrences for spine sizes.

A tableau sits on some longest chain exactly when no cohook H(i,j) with
i >= 2, j <= n-1 is entirely empty.  The counts are driven by a
three-parameter recurrence g(i,j,k) for the full order and a simpler
two-parameter one for the small sublattice; both use exact integers.
"""

from __future__ import annotations

from functools import cache

from .order import SIGMA_DOT, SIGMA_EMPTY, SIGMA_LEFT, EdgeLabel
from .irreducibles import BadLabel, _check_label, join_irr_tableau
from .tableau import Entry, FbTableau


def is_on_spine(t: FbTableau) -> bool:
    """No forbidden (all-empty) cohook."""
    n = t.n
    for i in range(2, n + 1):
        suffix_empty = True
        # Walk row i left to right; suffix_empty tracks the cells weakly
        # left of the current column.  Cohooks touching row 1, column n or
        # a border cell always contain an element, so j stays in i..n-1.
        for j in range(n, i - 1, -1):
            if t.content((i, j)) is not Entry.EMPTY:
                suffix_empty = False
            elif suffix_empty and j <= n - 1:
                if all(t.content((r, j)) is Entry.EMPTY for r in range(1, i)):
                    return False
    return True


@cache
def g(i: int, j: int, k: int) -> int:
    """The spine recurrence for the full order."""
    if i < 0 or j < 0 or k < 0:
        return 0
    if j == 0 and (i == 0 or k == 0):
        return 1
    if j > 1:
        return (
            ((1 << (i + 1)) - 1) * g(i + 1, j - 1, k)
            + ((1 << (k + 1)) - 1) * g(i, j - 1, k + 1)
            - ((1 << (i + 1)) - 1) * ((1 << (k + 1)) - 1) * g(i + 1, j - 2, k + 1)
        )
    if j == 1:
        return (
            ((1 << (i + 1)) - 1) * g(i + 1, 0, k)
            + ((1 << (k + 1)) - 1) * g(i, 0, k + 1)
            - ((1 << (i + 1)) - 1) * ((1 << (k + 1)) - 1) * g(i, 0, k)
        )
    return (
        ((1 << (i + 1)) - 1) * g(i, 0, k - 1)
        + ((1 << (k + 1)) - 1) * g(i - 1, 0, k)
        - 2 * ((1 << i) - 1) * ((1 << k) - 1) * g(i - 1, 0, k - 1)
    )


def f_estam(i: int, j: int, k: int) -> int:
    """Spine tableaux whose border splits as i up-ish, j dots, k left-ish."""
    return (1 << (i * (i - 1) // 2 + k * (k - 1) // 2)) * g(i, j, k)


def spine_count_estam(n: int) -> int:
    total = 0
    for i in range(n):
        for j in range(n - i):
            total += f_estam(i, j, n - 1 - i - j)
    return total


@cache
def f_stam(i: int, j: int) -> int:
    """The small-sublattice spine recurrence."""
    if i < 1 or j < 1:
        return 0
    if i == 1 or j == 1:
        return 1
    return i * f_stam(i, j - 1) + j * f_stam(i - 1, j) - (i - 1) * (j - 1) * f_stam(i - 1, j - 1)


def spine_count_stam(n: int) -> int:
    return sum(f_stam(i, n + 1 - i) for i in range(1, n + 1))


def spine_join_irr_tableau(n: int, lbl: EdgeLabel) -> FbTableau:
    """Join-irreducible of the spine with the given label.

    For sigma in {empty, dot} these are the join-irreducibles of the full
    order; for sigma = left the up-arrows of columns j..n-1 all sit in
    row i and the left-arrow of row i+1 sits in column j.
    """
    _check_label(n, lbl)
    if lbl.sigma != SIGMA_LEFT:
        return join_irr_tableau(n, lbl)
    i, j = lbl.i, lbl.j
    up = tuple(i if c >= j else c + 1 for c in range(1, n))
    left = tuple(j if r == i + 1 else n for r in range(2, n + 1))
    return FbTableau.from_components(n, up, left, ())


def spine_join_irr(n: int) -> list[FbTableau]:
    """All join-irreducibles of the spine, in label order."""
    out = []
    for i in range(1, n):
        for j in range(i, n):
            if i < j:
                out.append(spine_join_irr_tableau(n, EdgeLabel(i, j, SIGMA_EMPTY)))
            out.append(spine_join_irr_tableau(n, EdgeLabel(i, j, SIGMA_DOT)))
            out.append(spine_join_irr_tableau(n, EdgeLabel(i, j, SIGMA_LEFT)))
    return out
