"""Weighted Dyck-path counts of congruences and their generating functions.

The cell model weighs each cell under a Dyck path by how many of its two
upper edges lie on the path; a step model redistributes those weights
onto down steps and peaks, and a truncated continued fraction gives the
same numbers a third way.  All series arithmetic is exact (Fraction
coefficients, integral on output).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

FAMILY_ESTAM = "estam"
FAMILY_STAM = "stam"

# weight by (height class, number of shared upper edges); heights > 1
# collapse onto the class 2.
_CELL_WEIGHTS = {
    FAMILY_ESTAM: {(1, 2): 3, (1, 1): 2, (1, 0): 1, (2, 2): 7, (2, 1): 4, (2, 0): 2},
    FAMILY_STAM: {(1, 2): 1, (1, 1): 1, (1, 0): 1, (2, 2): 3, (2, 1): 2, (2, 0): 1},
}


def dyck_paths(n: int) -> Iterator[tuple[int, ...]]:
    """All Dyck paths of semilength n as 0/1 tuples (1 = up, 0 = down)."""

    def rec(ups: int, downs: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if ups == downs == 0:
            yield prefix
            return
        if ups:
            yield from rec(ups - 1, downs, prefix + (1,))
        if downs > ups:
            yield from rec(ups, downs - 1, prefix + (0,))

    return rec(n, n, ())


def heights(path: Sequence[int]) -> list[int]:
    out = [0]
    for step in path:
        out.append(out[-1] + (1 if step else -1))
    return out


def path_cells(path: Sequence[int]) -> list[tuple[int, int, int]]:
    """Cells below the path as (top abscissa, midpoint height, shared edges)."""
    y = heights(path)
    cells = []
    for t in range(1, len(path)):
        for h in range(1, y[t]):
            if (y[t] - (h + 1)) % 2:
                continue
            shared = 0
            if (y[t - 1], y[t]) == (h, h + 1):
                shared += 1
            if (y[t], y[t + 1]) == (h + 1, h):
                shared += 1
            cells.append((t, h, shared))
    return cells


def path_weight(path: Sequence[int], family: str) -> int:
    weights = _CELL_WEIGHTS[family]
    out = 1
    for _, h, shared in path_cells(path):
        out *= weights[(min(h, 2), shared)]
    return out


def weighted_sum(n: int, family: str) -> int:
    """Total cell-model weight over all Dyck paths of semilength n."""
    return sum(path_weight(p, family) for p in dyck_paths(n))


def path_weight_stepmodel(path: Sequence[int]) -> int:
    """The redistributed step/peak weight for the full-order family."""
    y = heights(path)
    out = 1
    for t, step in enumerate(path):
        if step:
            continue
        h = y[t]  # down step from height h to h - 1
        if h == 1:
            continue
        peak = t > 0 and path[t - 1] == 1
        if h == 2:
            out *= 3 if peak else 4
        else:
            out *= (7 if peak else 8) << (h - 3)
    return out


def weighted_sum_stepmodel(n: int) -> int:
    return sum(path_weight_stepmodel(p) for p in dyck_paths(n))


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_ints(cls, values: Sequence[int], order: int) -> "PowerSeries":
        padded = list(values)[: order + 1]
        padded += [0] * (order + 1 - len(padded))
        return cls(tuple(Fraction(v) for v in padded))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return PowerSeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if not a:
                continue
            for j in range(order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return PowerSeries(tuple(out))

    def inverse(self) -> "PowerSeries":
        """Multiplicative inverse; requires a unit constant term."""
        if not self.coeffs[0]:
            raise ZeroDivisionError("series has no inverse: zero constant term")
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * self.order
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coeffs[i] * out[k - i] if i <= self.order else 0
            out[k] = -inv0 * acc
        return PowerSeries(tuple(out))

    def integer_coeffs(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(c.numerator)
        return out


def _constant(value, order: int) -> PowerSeries:
    return PowerSeries((Fraction(value),) + (Fraction(0),) * order)


def _linear(c0, c1, order: int) -> PowerSeries:
    coeffs = [Fraction(c0), Fraction(c1)] + [Fraction(0)] * (order - 1)
    return PowerSeries(tuple(coeffs[: order + 1]))


def cf_series(a: Sequence[int], lam: Sequence[int], order: int) -> PowerSeries:
    """Evaluate the continued fraction
    1/(1 + a[0] x - lam[0] x/(1 + a[1] x - lam[1] x/(...))) to the given
    order; lam[h] is the paper-style lambda_{h+1}.

    Level h first contributes at x^(h+1), so order+1 levels suffice; the
    result is recomputed two levels deeper and compared, as a guard
    against an off-by-one in that bound (deeper levels read as 0).
    """
    if len(a) < order + 1 or len(lam) < order + 1:
        raise ValueError(f"need sequences up to index {order}, got {len(a)}/{len(lam)}")
    first = _cf_eval(a, lam, order, order + 1)
    second = _cf_eval(a, lam, order, order + 3)
    assert first == second, "continued-fraction truncation depth is too shallow"
    return first


def _cf_eval(a: Sequence[int], lam: Sequence[int], order: int, depth: int) -> PowerSeries:
    level = _constant(1, order)
    for h in range(depth - 1, -1, -1):
        ah = a[h] if h < len(a) else 0
        lh = lam[h] if h < len(lam) else 0
        denom = _linear(1, ah, order) - _linear(0, lh, order) * level
        level = denom.inverse()
    return level


def estam_cf_params(order: int) -> tuple[list[int], list[int]]:
    """a = (0,1,1,2,4,8,...) and lambda = (1,4,8,16,32,...)."""
    depth = order + 4
    a = [0, 1] + [1 << (i - 2) for i in range(2, depth)]
    lam = [1] + [1 << i for i in range(2, depth + 1)]
    return a, lam


def stam_cf_params(order: int) -> tuple[list[int], list[int]]:
    """a = (0,0,1,1,1,...) and lambda = (1,1,4,4,4,...)."""
    depth = order + 4
    a = [0, 0] + [1] * depth
    lam = [1, 1] + [4] * depth
    return a, lam


def catalan_series(order: int) -> PowerSeries:
    depth = order + 4
    return cf_series([0] * depth, [1] * depth, order)


def congruence_series(family: str, order: int) -> PowerSeries:
    if family == FAMILY_ESTAM:
        a, lam = estam_cf_params(order)
    elif family == FAMILY_STAM:
        a, lam = stam_cf_params(order)
    else:
        raise ValueError(f"unknown family {family!r}")
    return cf_series(a, lam, order)


def narayana(ell: Fraction, order: int) -> PowerSeries:
    """Series solution of N = 1 + (ell - 1) x N + x N^2."""
    ell = Fraction(ell)
    coeffs = [Fraction(1)] + [Fraction(0)] * order
    for m in range(1, order + 1):
        acc = (ell - 1) * coeffs[m - 1]
        acc += sum(coeffs[i] * coeffs[m - 1 - i] for i in range(m))
        coeffs[m] = acc
    return PowerSeries(tuple(coeffs))


def stam_series_narayana(order: int) -> PowerSeries:
    """The small-family congruence series via 1/(1 - x/(1 - x N(3/4, 4x)))."""
    inner = narayana(Fraction(3, 4), order)
    scaled = PowerSeries(tuple(c * (4**k) for k, c in enumerate(inner.coeffs)))
    x = _linear(0, 1, order)
    mid = (_constant(1, order) - x * scaled).inverse()
    return (_constant(1, order) - x * mid).inverse()
