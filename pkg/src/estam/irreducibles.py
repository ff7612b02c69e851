"""Join-irreducible tableaux, their labels, and the label posets.

A join-irreducible of the full order is written (i, j, sigma): the one
up-arrow off the border sits at (i, j), and sigma records the entry of
the cell just below it.  The same triples, recolored as red/green/blue
intervals [i,j], carry two further orders: the inclusion poset (whose
order ideals index the congruence lattice) and the product poset (whose
order ideals index the spine).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .order import SIGMA_DOT, SIGMA_EMPTY, SIGMA_LEFT, EdgeLabel
from .tableau import FbTableau

RED = "red"
GREEN = "green"
BLUE = "blue"


class BadLabel(ValueError):
    pass


class NotJoinIrreducible(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ColoredInterval:
    """An interval [i, j] colored red, green or blue.

    Red stands for (i,j,<-), blue for (i,j,.) with i < j, and green for
    (i,j,empty) with i < j or the degenerate (i,i,.).
    """

    i: int
    j: int
    color: str

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]{self.color[0]}"


def label_to_interval(lbl: EdgeLabel) -> ColoredInterval:
    if lbl.sigma == SIGMA_LEFT:
        return ColoredInterval(lbl.i, lbl.j, RED)
    if lbl.sigma == SIGMA_EMPTY:
        return ColoredInterval(lbl.i, lbl.j, GREEN)
    color = GREEN if lbl.i == lbl.j else BLUE
    return ColoredInterval(lbl.i, lbl.j, color)


def interval_to_label(iv: ColoredInterval) -> EdgeLabel:
    if iv.color == RED:
        return EdgeLabel(iv.i, iv.j, SIGMA_LEFT)
    if iv.color == BLUE:
        return EdgeLabel(iv.i, iv.j, SIGMA_DOT)
    return EdgeLabel(iv.i, iv.j, SIGMA_DOT if iv.i == iv.j else SIGMA_EMPTY)


def estam_labels(n: int) -> list[EdgeLabel]:
    """All join-irreducible labels of the size-n lattice."""
    out = []
    for i in range(1, n):
        for j in range(i, n):
            if i < j:
                out.append(EdgeLabel(i, j, SIGMA_EMPTY))
            out.append(EdgeLabel(i, j, SIGMA_DOT))
            out.append(EdgeLabel(i, j, SIGMA_LEFT))
    return sorted(out)


def stam_labels(n: int) -> list[EdgeLabel]:
    """Join-irreducible labels of the small-tableau sublattice."""
    out = []
    for i in range(1, n):
        for j in range(i, n):
            if i < j:
                out.append(EdgeLabel(i, j, SIGMA_EMPTY))
            out.append(EdgeLabel(i, j, SIGMA_LEFT))
    return sorted(out)


def colored_intervals(n: int) -> list[ColoredInterval]:
    return sorted(label_to_interval(lbl) for lbl in estam_labels(n))


def _check_label(n: int, lbl: EdgeLabel) -> None:
    if not 1 <= lbl.i <= lbl.j <= n - 1:
        raise BadLabel(f"label {lbl} out of range for size {n}")
    if lbl.i == lbl.j and lbl.sigma == SIGMA_EMPTY:
        raise BadLabel(f"sigma cannot be empty on the diagonal: {lbl}")


def join_irr_tableau(n: int, lbl: EdgeLabel) -> FbTableau:
    """The join-irreducible tableau with label (i, j, sigma)."""
    _check_label(n, lbl)
    i, j, sigma = lbl.i, lbl.j, lbl.sigma
    up = tuple(i if c == j else c + 1 for c in range(1, n))
    left = tuple(j if sigma == SIGMA_LEFT and r == i + 1 else n for r in range(2, n + 1))
    dots = []
    if sigma == SIGMA_DOT and i < j:
        dots.append((i + 1, j))
    return FbTableau.from_components(n, up, left, dots)


def classify_join_irr(t: FbTableau) -> EdgeLabel:
    """Inverse of join_irr_tableau; raises if t is not of that shape."""
    n = t.n
    off_border = [(t.up_row[c - 1], c) for c in range(1, n) if t.up_row[c - 1] != c + 1]
    if len(off_border) != 1:
        raise NotJoinIrreducible("expected exactly one up-arrow off the border")
    i, j = off_border[0]
    entry = t.content((i + 1, j)).value
    if entry == "left":
        sigma = SIGMA_LEFT
    elif entry == "dot":
        sigma = SIGMA_DOT
    elif entry == "empty":
        sigma = SIGMA_EMPTY
    else:
        raise NotJoinIrreducible(f"unexpected entry below the up-arrow: {entry}")
    lbl = EdgeLabel(i, j, sigma)
    try:
        expected = join_irr_tableau(n, lbl)
    except BadLabel as exc:
        raise NotJoinIrreducible(str(exc)) from exc
    if expected != t:
        raise NotJoinIrreducible("tableau is not a join-irreducible of the standard form")
    return lbl


def meet_irr_tableau(n: int, lbl: EdgeLabel) -> FbTableau:
    """Meet-irreducibles are the conjugates of the join-irreducibles."""
    return join_irr_tableau(n, lbl).conjugate()


def stam_join_irr_tableau(n: int, lbl: EdgeLabel) -> FbTableau:
    """Join-irreducible of the small-tableau sublattice: as in the full
    order, but the border cell of column j holds the left-arrow of its row."""
    _check_label(n, lbl)
    if lbl.sigma == SIGMA_DOT:
        raise BadLabel(f"small join-irreducibles have sigma in {{empty, left}}: {lbl}")
    i, j, sigma = lbl.i, lbl.j, lbl.sigma
    if i == j and sigma == SIGMA_EMPTY:
        raise BadLabel(f"sigma cannot be empty on the diagonal: {lbl}")
    up = tuple(i if c == j else c + 1 for c in range(1, n))
    left = {r: n for r in range(2, n + 1)}
    left[j + 1] = j
    if sigma == SIGMA_LEFT:
        left[i + 1] = j
    return FbTableau.from_components(n, up, left, ())


class LabeledPoset:
    """A small explicit poset on hashable labels.

    The relation is stored reflexively and transitively closed, as a
    per-element bitmask of weakly-below labels.
    """

    def __init__(self, labels: Sequence[Hashable], below: Sequence[int]):
        self.labels = tuple(labels)
        self.index = {lbl: k for k, lbl in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate labels")
        self._below = tuple(below)
        for k, mask in enumerate(self._below):
            if not mask >> k & 1:
                raise ValueError("relation must be reflexive")

    @classmethod
    def from_relations(
        cls, labels: Sequence[Hashable], pairs: Iterable[tuple[Hashable, Hashable]]
    ) -> "LabeledPoset":
        """Build from (lower, upper) pairs; takes the reflexive-transitive
        closure and checks antisymmetry."""
        labels = tuple(labels)
        index = {lbl: k for k, lbl in enumerate(labels)}
        m = len(labels)
        below = [1 << k for k in range(m)]
        for lo, hi in pairs:
            below[index[hi]] |= 1 << index[lo]
        changed = True
        while changed:
            changed = False
            for k in range(m):
                mask = below[k]
                acc = mask
                while mask:
                    low = mask & -mask
                    acc |= below[low.bit_length() - 1]
                    mask ^= low
                if acc != below[k]:
                    below[k] = acc
                    changed = True
        for a in range(m):
            for b in range(a + 1, m):
                if below[a] >> b & 1 and below[b] >> a & 1:
                    raise ValueError(f"cycle between {labels[a]!r} and {labels[b]!r}")
        return cls(labels, below)

    def __len__(self) -> int:
        return len(self.labels)

    def leq(self, lo: Hashable, hi: Hashable) -> bool:
        return bool(self._below[self.index[hi]] >> self.index[lo] & 1)

    def relation_pairs(self) -> frozenset[tuple[Hashable, Hashable]]:
        """All (lower, upper) pairs, reflexive ones included."""
        out = []
        for k, mask in enumerate(self._below):
            while mask:
                low = mask & -mask
                out.append((self.labels[low.bit_length() - 1], self.labels[k]))
                mask ^= low
        return frozenset(out)

    def opposite(self) -> "LabeledPoset":
        m = len(self.labels)
        above = [0] * m
        for k, mask in enumerate(self._below):
            while mask:
                low = mask & -mask
                above[low.bit_length() - 1] |= 1 << k
                mask ^= low
        return LabeledPoset(self.labels, above)

    def cover_pairs(self) -> list[tuple[Hashable, Hashable]]:
        m = len(self.labels)
        covers = []
        for k in range(m):
            strict = self._below[k] & ~(1 << k)
            mask = strict
            while mask:
                low = mask & -mask
                a = low.bit_length() - 1
                mask ^= low
                if not (strict & self._below[a] & ~(1 << a)):
                    covers.append((self.labels[a], self.labels[k]))
        return covers

    def to_dot(self, name: str = "poset") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for k, lbl in enumerate(self.labels):
            lines.append(f'  n{k} [label="{lbl}"];')
        for lo, hi in sorted(self.cover_pairs(), key=str):
            lines.append(f"  n{self.index[lo]} -> n{self.index[hi]};")
        lines.append("}")
        return "\n".join(lines)


def count_order_ideals(poset: LabeledPoset, cap: int = 60) -> int:
    """Number of down-closed subsets, by pivot splitting with memoization
    and connected-component factorization."""
    m = len(poset)
    if m > cap:
        raise TooLarge(f"poset has {m} elements, cap is {cap}")
    below = poset._below
    above = poset.opposite()._below
    neighbors = [(below[k] | above[k]) & ~(1 << k) for k in range(m)]
    full = (1 << m) - 1
    memo: dict[int, int] = {}

    def components(mask: int) -> list[int]:
        comps = []
        remaining = mask
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                new = 0
                while frontier:
                    low = frontier & -frontier
                    new |= neighbors[low.bit_length() - 1] & mask
                    frontier ^= low
                frontier = new & ~comp
                comp |= new
            comps.append(comp & mask)
            remaining &= ~comp
        return comps

    def count(mask: int) -> int:
        if mask == 0:
            return 1
        cached = memo.get(mask)
        if cached is not None:
            return cached
        out = 1
        for comp in components(mask):
            if comp & (comp - 1) == 0:
                out *= 2
                continue
            sub = memo.get(comp)
            if sub is None:
                pivot = max(
                    _bits(comp),
                    key=lambda k: ((below[k] | above[k]) & comp).bit_count(),
                )
                sub = count(comp & ~(above[pivot] | 1 << pivot)) + count(
                    comp & ~below[pivot]
                )
                memo[comp] = sub
            out *= sub
        memo[mask] = out
        return out

    return count(full)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def join_irr_poset(n: int) -> LabeledPoset:
    """Induced order on the join-irreducibles: one component per column,
    with chains (i,j,e) < (i,j,b) < (i,j,l) and (j,j,b) < (j-1,j,e) < ...
    < (1,j,e)."""
    labels = estam_labels(n)
    pairs = []
    for j in range(1, n):
        for i in range(1, j + 1):
            if i < j:
                pairs.append((EdgeLabel(i, j, SIGMA_EMPTY), EdgeLabel(i, j, SIGMA_DOT)))
            pairs.append((EdgeLabel(i, j, SIGMA_DOT), EdgeLabel(i, j, SIGMA_LEFT)))
        if j >= 2:
            pairs.append((EdgeLabel(j, j, SIGMA_DOT), EdgeLabel(j - 1, j, SIGMA_EMPTY)))
        for i in range(2, j):
            pairs.append((EdgeLabel(i, j, SIGMA_EMPTY), EdgeLabel(i - 1, j, SIGMA_EMPTY)))
    return LabeledPoset.from_relations(labels, pairs)


def forcing_poset(n: int, family: str = "estam") -> LabeledPoset:
    """The forcing order on join-irreducible labels, from its cover relations."""
    if family == "estam":
        labels = estam_labels(n)
        pairs = []
        for i in range(1, n):
            for j in range(i, n):
                sigmas = [SIGMA_LEFT, SIGMA_DOT] + ([SIGMA_EMPTY] if i < j else [])
                for sigma in sigmas:
                    src = EdgeLabel(i, j, sigma)
                    if j - 1 >= i:
                        pairs.append((src, EdgeLabel(i, j - 1, SIGMA_LEFT)))
                    if j - i >= 2:
                        pairs.append((src, EdgeLabel(i + 1, j, SIGMA_EMPTY)))
                    elif j - i == 1:
                        pairs.append((src, EdgeLabel(i + 1, j, SIGMA_DOT)))
        return LabeledPoset.from_relations(labels, pairs)
    if family == "stam":
        labels = stam_labels(n)
        pairs = []
        for i in range(1, n):
            for j in range(i, n):
                sigmas = [SIGMA_LEFT] + ([SIGMA_EMPTY] if i < j else [])
                for sigma in sigmas:
                    src = EdgeLabel(i, j, sigma)
                    if j - 1 >= i:
                        pairs.append((src, EdgeLabel(i, j - 1, SIGMA_LEFT)))
                    if j - i >= 2:
                        pairs.append((src, EdgeLabel(i + 1, j, SIGMA_EMPTY)))
                    elif j - i == 1:
                        pairs.append((src, EdgeLabel(i + 1, j, SIGMA_LEFT)))
        return LabeledPoset.from_relations(labels, pairs)
    raise ValueError(f"unknown family {family!r}")


def colored_poset(n: int, kind: str) -> LabeledPoset:
    """The inclusion or product order on colored intervals."""
    elements = colored_intervals(n)
    pairs = []
    if kind == "inclusion":
        for lo in elements:
            for hi in elements:
                if lo != hi and _inclusion_leq(lo, hi):
                    pairs.append((lo, hi))
    elif kind == "product":
        for lo in elements:
            for hi in elements:
                if lo != hi and _product_leq(lo, hi):
                    pairs.append((lo, hi))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return LabeledPoset.from_relations(elements, pairs)


def _inclusion_leq(a: ColoredInterval, b: ColoredInterval) -> bool:
    # Same-interval cross-color pairs are incomparable; the inequalities on
    # the indices are strict there (the printed rules are reflexively sloppy).
    if a.color == RED and a.i == b.i and a.j < b.j:
        return True
    if a.color == GREEN and a.j == b.j and b.i < a.i:
        return True
    if a.color in (RED, GREEN) and b.i < a.i <= a.j < b.j:
        return True
    return False


def _product_leq(a: ColoredInterval, b: ColoredInterval) -> bool:
    # Opposite of the order on the spine join-irreducibles S(i,j,sigma).
    if a.color == RED:
        if b.color == RED:
            return a.i == b.i and a.j <= b.j
        if b.color == GREEN:
            return a.i <= b.i and a.j <= b.j
        return a.i == b.i and a.j <= b.j
    if a.color == BLUE:
        return b.color == GREEN and a.i <= b.i and a.j == b.j
    if a.color == GREEN:
        return b.color == GREEN and a.i <= b.i and a.j == b.j
    return False
