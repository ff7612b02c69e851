"""fb-tableaux: staircase fillings with a root, up-arrows, left-arrows and dots.

Cells use the convention that the j-th cell from the left in row i is
(i, n+1-j), so column indices decrease from left to right.  Row 1 holds
columns n..1, row i >= 2 holds columns n..i-1, and the border cell of
row i is (i, i-1).  A tableau is stored by the positions of its n-1
up-arrows (one per column 1..n-1), its n-1 left-arrows (one per row
2..n) and a bitmask of dots in non-border free cells; everything else
(root, border contents) is derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

Cell = tuple[int, int]


class TableauError(ValueError):
    pass


class ShapeError(TableauError):
    pass


class OutOfShape(TableauError):
    pass


class ArrowConflict(TableauError):
    pass


class DotNotFree(TableauError):
    pass


class BadChar(TableauError):
    pass


class BadShape(TableauError):
    pass


class Entry(Enum):
    EMPTY = "empty"
    ROOT = "root"
    UP = "up"
    LEFT = "left"
    DOT = "dot"


ENTRY_CHAR = {
    Entry.EMPTY: ".",
    Entry.ROOT: "o",
    Entry.UP: "^",
    Entry.LEFT: "<",
    Entry.DOT: "o",
}

# Border letters, ordered ^ < o < '<' for the border-word lattice [3]^(n-1).
BORDER_RANK = {"^": 0, "o": 1, "<": 2}


def row_columns(n: int, r: int) -> range:
    """Columns of row r, from the leftmost cell (column n) to the rightmost."""
    lo = 1 if r == 1 else r - 1
    return range(n, lo - 1, -1)


def in_shape(n: int, cell: Cell) -> bool:
    r, c = cell
    if r == 1:
        return 1 <= c <= n
    return 2 <= r <= n and r - 1 <= c <= n


def is_border(cell: Cell) -> bool:
    r, c = cell
    return r >= 2 and c == r - 1


def staircase_cells(n: int) -> list[Cell]:
    return [(r, c) for r in range(1, n + 1) for c in row_columns(n, r)]


@lru_cache(maxsize=None)
def interior_cells(n: int) -> tuple[Cell, ...]:
    """Non-border cells that can be free: 2 <= r <= c <= n-1, sorted."""
    return tuple((r, c) for r in range(2, n) for c in range(r, n))


@lru_cache(maxsize=None)
def _interior_index(n: int) -> dict[Cell, int]:
    return {cell: k for k, cell in enumerate(interior_cells(n))}


def cohook(n: int, cell: Cell) -> frozenset[Cell]:
    """The cell together with all cells to its left and above it."""
    r, c = cell
    if not in_shape(n, cell):
        raise OutOfShape(f"cell {cell} not in staircase of size {n}")
    left = {(r, c2) for c2 in range(c + 1, n + 1) if in_shape(n, (r, c2))}
    above = {(r2, c) for r2 in range(1, r)}
    return frozenset({cell} | left | above)


def dots_to_mask(n: int, dots: Iterable[Cell]) -> int:
    index = _interior_index(n)
    mask = 0
    for cell in dots:
        if cell not in index:
            raise DotNotFree(f"dot {cell} is not in an interior non-border cell")
        mask |= 1 << index[cell]
    return mask


def mask_to_dots(n: int, mask: int) -> frozenset[Cell]:
    cells = interior_cells(n)
    return frozenset(cells[k] for k in range(mask.bit_length()) if mask >> k & 1)


@dataclass(frozen=True)
class FbTableau:
    """Canonical encoding of an fb-tableau of size n.

    up_row[j-1] is the row of the up-arrow in column j (j = 1..n-1);
    left_col[i-2] is the column of the left-arrow in row i (i = 2..n);
    dots is a bitmask over interior_cells(n).
    """

    n: int
    up_row: tuple[int, ...]
    left_col: tuple[int, ...]
    dots: int

    def up(self, j: int) -> int:
        return self.up_row[j - 1]

    def left(self, i: int) -> int:
        return self.left_col[i - 2]

    @classmethod
    def from_components(
        cls,
        n: int,
        up_row: Mapping[int, int] | Sequence[int],
        left_col: Mapping[int, int] | Sequence[int],
        dots: Iterable[Cell] = (),
    ) -> "FbTableau":
        """Validating constructor; raises naming the first violated invariant."""
        if n < 1:
            raise ShapeError(f"size must be >= 1, got {n}")
        up = _as_tuple(up_row, n - 1, offset=1, what="up_row")
        left = _as_tuple(left_col, n - 1, offset=2, what="left_col")
        for j in range(1, n):
            r = up[j - 1]
            if not 1 <= r <= j + 1:
                raise ShapeError(f"up-arrow of column {j} at row {r} is outside the column")
        for i in range(2, n + 1):
            c = left[i - 2]
            if not i - 1 <= c <= n:
                raise ShapeError(f"left-arrow of row {i} at column {c} is outside the row")
        for j in range(1, n):
            r = up[j - 1]
            if r >= 2 and left[r - 2] <= j:
                raise ArrowConflict(
                    f"up-arrow at ({r},{j}) has no left-arrow strictly to its left"
                )
        for i in range(2, n + 1):
            c = left[i - 2]
            if c < n and up[c - 1] >= i:
                raise ArrowConflict(
                    f"left-arrow at ({i},{c}) has no up-arrow strictly above it"
                )
        mask = dots if isinstance(dots, int) else dots_to_mask(n, dots)
        if mask >> len(interior_cells(n)):
            raise DotNotFree("dot bitmask has bits outside the interior cells")
        t = cls(n, up, left, mask)
        bad = mask & ~t.free_mask
        if bad:
            cell = min(mask_to_dots(n, bad & -bad))
            raise DotNotFree(f"dot at {cell} is not in a free cell")
        return t

    @classmethod
    def bottom(cls, n: int) -> "FbTableau":
        """All up-arrows on the border, all left-arrows in column n."""
        return cls(n, tuple(j + 1 for j in range(1, n)), (n,) * (n - 1), 0)

    @classmethod
    def top(cls, n: int) -> "FbTableau":
        """All up-arrows in row 1, all left-arrows on the border."""
        return cls(n, (1,) * (n - 1), tuple(i - 1 for i in range(2, n + 1)), 0)

    @cached_property
    def free_mask(self) -> int:
        """Bitmask of interior cells strictly below an up-arrow and strictly
        right of a left-arrow."""
        mask = 0
        for k, (r, c) in enumerate(interior_cells(self.n)):
            if self.up_row[c - 1] < r and self.left_col[r - 2] > c:
                mask |= 1 << k
        return mask

    def content(self, cell: Cell) -> Entry:
        r, c = cell
        n = self.n
        if not in_shape(n, cell):
            raise OutOfShape(f"cell {cell} not in staircase of size {n}")
        if cell == (1, n):
            return Entry.ROOT
        if c < n and self.up_row[c - 1] == r:
            return Entry.UP
        if r >= 2 and self.left_col[r - 2] == c:
            return Entry.LEFT
        if is_border(cell):
            return Entry.DOT
        index = _interior_index(n).get(cell)
        if index is not None and self.dots >> index & 1:
            return Entry.DOT
        return Entry.EMPTY

    def dot_cells(self) -> frozenset[Cell]:
        """Interior (non-border) dots only."""
        return mask_to_dots(self.n, self.dots)

    def free_cells(self) -> frozenset[Cell]:
        """All free cells, border ones included."""
        cells = set(mask_to_dots(self.n, self.free_mask))
        for i in range(2, self.n + 1):
            if self.up_row[i - 2] < i and self.left_col[i - 2] > i - 1:
                cells.add((i, i - 1))
        return frozenset(cells)

    def row_space(self) -> frozenset[Cell]:
        """Cells weakly to the right of the left-arrows and the root."""
        n = self.n
        cells = {(1, c) for c in range(1, n + 1)}
        for i in range(2, n + 1):
            cells.update((i, c) for c in range(i - 1, self.left_col[i - 2] + 1))
        return frozenset(cells)

    def col_space(self) -> frozenset[Cell]:
        """Cells weakly below the up-arrows and the root."""
        n = self.n
        cells = {(r, n) for r in range(1, n + 1)}
        for j in range(1, n):
            cells.update((r, j) for r in range(self.up_row[j - 1], j + 2))
        return frozenset(cells)

    def row_space_strict(self) -> frozenset[Cell]:
        cells = set()
        for i in range(2, self.n + 1):
            cells.update((i, c) for c in range(i - 1, self.left_col[i - 2]))
        return frozenset(cells)

    def col_space_strict(self) -> frozenset[Cell]:
        cells = set()
        for j in range(1, self.n):
            cells.update((r, j) for r in range(self.up_row[j - 1] + 1, j + 2))
        return frozenset(cells)

    def border_word(self) -> str:
        """Contents of the border cells (2,1)..(n,n-1), top to bottom."""
        return "".join(
            ENTRY_CHAR[self.content((k + 1, k))] for k in range(1, self.n)
        )

    def conjugate(self) -> "FbTableau":
        """Reflect about the main diagonal, swapping arrow types and
        complementing dots on free cells."""
        n = self.n
        up = [0] * (n - 1)
        left = [0] * (n - 1)
        for i in range(2, n + 1):
            up[(n + 1 - i) - 1] = n + 1 - self.left_col[i - 2]
        for c in range(1, n):
            left[(n + 1 - c) - 2] = n + 1 - self.up_row[c - 1]
        empty_free = self.free_mask & ~self.dots
        index = _interior_index(n)
        dots = 0
        for cell in mask_to_dots(n, empty_free):
            r, c = cell
            dots |= 1 << index[(n + 1 - c, n + 1 - r)]
        return FbTableau(n, tuple(up), tuple(left), dots)

    def is_small(self) -> bool:
        """Exactly one dot, the root: no interior dots and no border dots."""
        if self.dots:
            return False
        return all(
            self.up_row[i - 2] == i or self.left_col[i - 2] == i - 1
            for i in range(2, self.n + 1)
        )

    def is_binary(self) -> bool:
        """No free cells at all."""
        if self.free_mask:
            return False
        return all(
            self.up_row[i - 2] == i or self.left_col[i - 2] == i - 1
            for i in range(2, self.n + 1)
        )

    def filling(self) -> frozenset[Cell]:
        """The nonempty cells of the pre-parse dot filling."""
        cells = {(1, self.n)}
        cells.update((self.up_row[j - 1], j) for j in range(1, self.n))
        cells.update((i, self.left_col[i - 2]) for i in range(2, self.n + 1))
        cells.update((i, i - 1) for i in range(2, self.n + 1))
        cells.update(self.dot_cells())
        return frozenset(cells)

    def is_minimal(self) -> bool:
        """Removing any pre-parse dot outside the root and border cells breaks
        the fb property."""
        filled = self.filling()
        for cell in filled:
            if cell == (1, self.n) or is_border(cell):
                continue
            if _filling_is_fb(self.n, filled - {cell}):
                return False
        return True

    def render(self) -> str:
        """Text grid: one line per row, characters o ^ < . with no padding."""
        lines = []
        for r in range(1, self.n + 1):
            lines.append(
                "".join(ENTRY_CHAR[self.content((r, c))] for c in row_columns(self.n, r))
            )
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> "FbTableau":
        """Inverse of render; raises BadShape/BadChar on malformed input."""
        lines = text.splitlines()
        if not lines:
            raise BadShape("empty input")
        n = len(lines[0])
        if len(lines) != n:
            raise BadShape(f"expected {n} lines for width {n}, got {len(lines)}")
        up: dict[int, int] = {}
        left: dict[int, int] = {}
        dots = []
        for li, line in enumerate(lines):
            r = li + 1
            cols = list(row_columns(n, r))
            if len(line) != len(cols):
                raise BadShape(f"row {r} should have {len(cols)} cells, got {len(line)}")
            for ch, c in zip(line, cols):
                if ch == ".":
                    continue
                if ch == "^":
                    if c in up:
                        raise ArrowConflict(f"two up-arrows in column {c}")
                    up[c] = r
                elif ch == "<":
                    if r in left:
                        raise ArrowConflict(f"two left-arrows in row {r}")
                    left[r] = c
                elif ch == "o":
                    if (r, c) == (1, n):
                        continue
                    if is_border((r, c)):
                        continue
                    dots.append((r, c))
                else:
                    raise BadChar(f"unexpected character {ch!r} at ({r},{c})")
        if n == 1:
            if lines != ["o"]:
                raise BadShape("size-1 tableau must be the single root cell")
            return cls(1, (), (), 0)
        if lines[0][0] != "o":
            raise BadChar("root cell (1,n) must contain o")
        for j in range(1, n):
            if j not in up:
                raise ArrowConflict(f"column {j} has no up-arrow")
        for i in range(2, n + 1):
            if i not in left:
                raise ArrowConflict(f"row {i} has no left-arrow")
        return cls.from_components(n, up, left, dots)

    def __str__(self) -> str:
        return self.render()


def _as_tuple(
    data: Mapping[int, int] | Sequence[int], length: int, offset: int, what: str
) -> tuple[int, ...]:
    if isinstance(data, Mapping):
        missing = [k for k in range(offset, offset + length) if k not in data]
        if missing:
            raise ShapeError(f"{what} missing key {missing[0]}")
        extra = [k for k in data if not offset <= k < offset + length]
        if extra:
            raise ShapeError(f"{what} has unexpected key {extra[0]}")
        return tuple(data[k] for k in range(offset, offset + length))
    seq = tuple(data)
    if len(seq) != length:
        raise ShapeError(f"{what} must have {length} entries, got {len(seq)}")
    return seq


def _filling_is_fb(n: int, filled: frozenset[Cell]) -> bool:
    """Check the raw fb conditions on a set of dotted cells."""
    if (1, n) not in filled:
        return False
    for i in range(2, n + 1):
        if (i, i - 1) not in filled:
            return False
    for cell in filled:
        if cell == (1, n):
            continue
        r, c = cell
        has_left = any((r, c2) in filled for c2 in range(c + 1, n + 1))
        has_above = any((r2, c) in filled for r2 in range(1, r))
        if not (has_left or has_above):
            return False
    return True


def parse_text(text: str) -> FbTableau:
    return FbTableau.parse(text)


def render_text(t: FbTableau) -> str:
    return t.render()
