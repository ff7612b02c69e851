"""The partial order on fb-tableaux, its meet/join constructions and covers.

S is below T when the column space of S sits inside that of T, the row
space of T sits inside that of S, and every cell free in both tableaux
that is dotted in S is dotted in T.  Covers come in three kinds: raise
an up-arrow, slide a left-arrow onto the nearest dot to its right, or
fill an empty free cell.  Each cover edge carries the label (i,j,sigma)
of the join-irreducible tableau it corresponds to.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tableau import Cell, FbTableau, interior_cells, is_border, _interior_index

MOVE_I = "I"
MOVE_II = "II"
MOVE_III = "III"

SIGMA_EMPTY = "e"
SIGMA_LEFT = "l"
SIGMA_DOT = "b"

SIGMA_PRETTY = {SIGMA_EMPTY: "∅", SIGMA_LEFT: "←", SIGMA_DOT: "•"}


class SizeMismatch(ValueError):
    pass


class NotChangeable(ValueError):
    pass


class Unrealizable(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EdgeLabel:
    """Join-irreducible label (i, j, sigma) attached to a cover edge."""

    i: int
    j: int
    sigma: str

    def __post_init__(self):
        if self.sigma not in (SIGMA_EMPTY, SIGMA_LEFT, SIGMA_DOT):
            raise ValueError(f"bad sigma {self.sigma!r}")

    @property
    def rank(self) -> int:
        return self.j - self.i + (self.sigma == SIGMA_DOT)

    def __str__(self) -> str:
        return f"({self.i},{self.j},{self.sigma})"


def polygon_rank(lbl: EdgeLabel) -> int:
    """Rank used by the polygonal labeling.

    The dot bonus applies to blue-type labels only: (i,i,b) counts as the
    degenerate empty type, which keeps the zig-zag inequalities strict on
    heptagons whose raised up-arrow starts on the border.
    """
    return lbl.j - lbl.i + (1 if lbl.sigma == SIGMA_DOT and lbl.i < lbl.j else 0)


def _check_sizes(s: FbTableau, t: FbTableau) -> None:
    if s.n != t.n:
        raise SizeMismatch(f"sizes differ: {s.n} vs {t.n}")


def leq(s: FbTableau, t: FbTableau) -> bool:
    """s is below t in the tableau order."""
    _check_sizes(s, t)
    for j in range(s.n - 1):
        if s.up_row[j] < t.up_row[j]:
            return False
    for i in range(s.n - 1):
        if s.left_col[i] < t.left_col[i]:
            return False
    common_free = s.free_mask & t.free_mask
    return not (s.dots & common_free & ~t.dots)


def _left_arrow_slot(up_row: tuple[int, ...], n: int, i: int, start: int) -> int:
    """First admissible column for the left-arrow of row i, scanning leftwards
    (increasing column) from start.  Admissible: below an up-arrow or column n."""
    for c in range(start, n):
        if up_row[c - 1] < i:
            return c
    return n


def _up_arrow_slot(left_col: tuple[int, ...], i: int, j: int) -> int:
    """First admissible row for the up-arrow of column j, scanning upwards
    (decreasing row) from i.  Admissible: right of a left-arrow or row 1."""
    for r in range(i, 1, -1):
        if left_col[r - 2] > j:
            return r
    return 1


def meet(m: FbTableau, other: FbTableau) -> FbTableau:
    """Greatest lower bound, built arrow by arrow then dot by dot."""
    _check_sizes(m, other)
    n = m.n
    up = tuple(max(a, b) for a, b in zip(m.up_row, other.up_row))
    left = tuple(
        _left_arrow_slot(up, n, i, max(m.left_col[i - 2], other.left_col[i - 2]))
        for i in range(2, n + 1)
    )
    result = FbTableau(n, up, left, 0)
    dots = result.free_mask
    dots &= m.dots | ~m.free_mask
    dots &= other.dots | ~other.free_mask
    return FbTableau(n, up, left, dots & result.free_mask)


def join(m: FbTableau, other: FbTableau) -> FbTableau:
    """Least upper bound, dual construction to meet."""
    _check_sizes(m, other)
    n = m.n
    left = tuple(min(a, b) for a, b in zip(m.left_col, other.left_col))
    up = tuple(
        _up_arrow_slot(left, min(m.up_row[j - 1], other.up_row[j - 1]), j)
        for j in range(1, n)
    )
    result = FbTableau(n, up, left, 0)
    dots = result.free_mask & (m.dots | other.dots)
    return FbTableau(n, up, left, dots)


def join_via_conjugation(m: FbTableau, other: FbTableau) -> FbTableau:
    """Second route to the join, through the self-duality."""
    return meet(m.conjugate(), other.conjugate()).conjugate()


def changeable_cells(t: FbTableau) -> list[tuple[Cell, str]]:
    """Cells at which a cover move applies, with the move type."""
    n = t.n
    found = []
    for j in range(1, n):
        r = t.up_row[j - 1]
        if r >= 2:
            found.append(((r, j), MOVE_I))
    for i in range(2, n + 1):
        c0 = t.left_col[i - 2]
        target = _type2_target(t, i, c0)
        if target is not None:
            found.append(((i, c0), MOVE_II))
    index = _interior_index(n)
    empty_free = t.free_mask & ~t.dots
    for cell in interior_cells(n):
        if empty_free >> index[cell] & 1:
            found.append((cell, MOVE_III))
    found.sort()
    return found


def _type2_target(t: FbTableau, i: int, c0: int) -> int | None:
    """Landing column of a type II move from the left-arrow at (i, c0), or
    None.  Scanning right, cells above an up-arrow are skipped; the scan
    stops at the first free cell or at an up-arrow of row i."""
    index = _interior_index(t.n)
    for c in range(c0 - 1, i - 2, -1):
        r = t.up_row[c - 1]
        if r > i:
            continue
        if r == i:
            return None
        if c == i - 1:
            return c
        if t.dots >> index[(i, c)] & 1:
            return c
        return None
    return None


def apply_move(t: FbTableau, cell: Cell, move: str) -> tuple[FbTableau, EdgeLabel]:
    """Apply one cover move at a changeable cell; returns the cover and its
    edge label."""
    n = t.n
    r, c = cell
    if move == MOVE_I:
        if not (1 <= c <= n - 1) or t.up_row[c - 1] != r or r < 2:
            raise NotChangeable(f"no changeable up-arrow at {cell}")
        target = _up_arrow_slot(t.left_col, r - 1, c)
        up = list(t.up_row)
        up[c - 1] = target
        out = FbTableau(n, tuple(up), t.left_col, t.dots)
        sigma = SIGMA_DOT if is_border(cell) else SIGMA_EMPTY
        return out, EdgeLabel(r - 1, c, sigma)
    if move == MOVE_II:
        if not (2 <= r <= n) or t.left_col[r - 2] != c:
            raise NotChangeable(f"no left-arrow at {cell}")
        target = _type2_target(t, r, c)
        if target is None:
            raise NotChangeable(f"left-arrow at {cell} is not changeable")
        left = list(t.left_col)
        left[r - 2] = target
        dots = t.dots
        if not is_border((r, target)):
            dots &= ~(1 << _interior_index(n)[(r, target)])
        return FbTableau(n, t.up_row, tuple(left), dots), EdgeLabel(r - 1, target, SIGMA_LEFT)
    if move == MOVE_III:
        index = _interior_index(n).get(cell)
        if index is None or not (t.free_mask & ~t.dots) >> index & 1:
            raise NotChangeable(f"cell {cell} is not an empty free cell")
        return FbTableau(n, t.up_row, t.left_col, t.dots | 1 << index), EdgeLabel(
            r - 1, c, SIGMA_DOT
        )
    raise NotChangeable(f"unknown move type {move!r}")


def covers(t: FbTableau) -> list[tuple[FbTableau, EdgeLabel]]:
    """All covers of t, one per changeable cell."""
    return [apply_move(t, cell, move) for cell, move in changeable_cells(t)]


def cocovers(t: FbTableau) -> list[FbTableau]:
    """All elements covered by t, through the self-duality."""
    conj = t.conjugate()
    return [u.conjugate() for u, _ in covers(conj)]


def from_changeables(n: int, changeables) -> FbTableau:
    """Rebuild the unique tableau with the given changeable cells and types."""
    spec = set(changeables)
    cells = {cell for cell, _ in spec}
    if len(cells) != len(spec):
        raise Unrealizable("a cell appears with two move types")
    up: dict[int, int] = {}
    left: dict[int, int] = {}
    for (r, c), move in spec:
        if move == MOVE_I:
            if c in up:
                raise Unrealizable(f"two type I cells in column {c}")
            up[c] = r
        elif move == MOVE_II:
            if r in left:
                raise Unrealizable(f"two type II cells in row {r}")
            left[r] = c
        elif move != MOVE_III:
            raise Unrealizable(f"unknown move type {move!r}")
    up_row = tuple(up.get(j, 1) for j in range(1, n))
    for i in range(2, n + 1):
        if i in left:
            continue
        for c in range(i - 1, n + 1):
            if (i, c) in cells:
                continue
            if c < n and up_row[c - 1] >= i:
                continue
            blocked = any(
                (c2 <= n - 1 and up_row[c2 - 1] == i) or (i, c2) in cells
                for c2 in range(c + 1, n + 1)
            )
            if not blocked:
                left[i] = c
                break
        else:
            raise Unrealizable(f"no admissible left-arrow position in row {i}")
    try:
        left_col = tuple(left[i] for i in range(2, n + 1))
        result = FbTableau.from_components(n, up_row, left_col, ())
        free_dots = result.free_mask
        index = _interior_index(n)
        for (r, c), move in spec:
            if move == MOVE_III:
                bit = index.get((r, c))
                if bit is None or not free_dots >> bit & 1:
                    raise Unrealizable(f"type III cell {(r, c)} is not free")
                free_dots &= ~(1 << bit)
        result = FbTableau.from_components(n, up_row, left_col, free_dots)
    except Unrealizable:
        raise
    except ValueError as exc:
        raise Unrealizable(str(exc)) from exc
    if set(changeable_cells(result)) != spec:
        raise Unrealizable("changeable cells do not round-trip")
    return result


def stam_covers(t: FbTableau) -> list[tuple[FbTableau, EdgeLabel]]:
    """Covers of a small tableau inside the small-tableau sublattice.

    Two moves: raise a non-border up-arrow (as in the full order), or slide
    a left-arrow rightwards to the nearest admissible cell; when that cell
    is the border, its up-arrow is raised in the same step.
    """
    if not t.is_small():
        raise ValueError("stam_covers expects a small tableau")
    n = t.n
    found = []
    for j in range(1, n):
        r = t.up_row[j - 1]
        if r >= 2 and r != j + 1:
            target = _up_arrow_slot(t.left_col, r - 1, j)
            up = list(t.up_row)
            up[j - 1] = target
            found.append(
                ((r, j), FbTableau(n, tuple(up), t.left_col, 0), EdgeLabel(r - 1, j, SIGMA_EMPTY))
            )
    for i in range(2, n + 1):
        c0 = t.left_col[i - 2]
        for c in range(c0 - 1, i - 2, -1):
            r = t.up_row[c - 1]
            if r > i:
                continue
            if r == i:
                if c != i - 1:
                    break
                up = list(t.up_row)
                up[c - 1] = _up_arrow_slot(t.left_col, i - 1, c)
                left = list(t.left_col)
                left[i - 2] = c
                found.append(
                    ((i, c0), FbTableau(n, tuple(up), tuple(left), 0), EdgeLabel(i - 1, c, SIGMA_LEFT))
                )
                break
            left = list(t.left_col)
            left[i - 2] = c
            found.append(
                ((i, c0), FbTableau(n, t.up_row, tuple(left), 0), EdgeLabel(i - 1, c, SIGMA_LEFT))
            )
            break
    found.sort(key=lambda item: item[0])
    return [(u, lbl) for _, u, lbl in found]
