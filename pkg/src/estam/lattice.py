"""Generic finite-lattice engine over an explicit element list.

Elements are reindexed along a linear extension, so every down-set
bitmask has its maximum at the highest set bit; meets and joins are
found by brute greatest-lower/least-upper bound against that invariant
and fail loudly when a pair has none.  The structural checks
(semidistributivity, self-duality, extremality, polygonality, spine,
congruences, polygonal labeling) all run off the dense tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Sequence

import numpy as np

from .irreducibles import LabeledPoset, TooLarge, count_order_ideals


class NotALattice(ValueError):
    pass


class MemoryBudget(ValueError):
    pass


class Unlabeled(ValueError):
    pass


@dataclass
class FiniteLattice:
    elements: list
    leq_matrix: np.ndarray
    down: list[int]
    up: list[int]
    hasse_up: list[list[int]]
    hasse_down: list[list[int]]
    meet_table: np.ndarray
    join_table: np.ndarray
    bottom: int
    top: int
    edge_labels: dict[tuple[int, int], Hashable] | None = None
    index: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.leq_matrix[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def cover_edges(self) -> Iterator[tuple[int, int]]:
        for x, ups in enumerate(self.hasse_up):
            for y in ups:
                yield x, y

    def join_irreducibles(self) -> list[int]:
        return [x for x in range(len(self.elements)) if len(self.hasse_down[x]) == 1]

    def meet_irreducibles(self) -> list[int]:
        return [x for x in range(len(self.elements)) if len(self.hasse_up[x]) == 1]


def build(
    elements: Sequence,
    leq: Callable,
    *,
    table_cap: int = 20000,
    edge_label: Callable | None = None,
) -> FiniteLattice:
    """Build dense order/meet/join structure by brute glb/lub.

    Raises NotALattice when some pair lacks a unique bound and
    MemoryBudget when the quadratic tables would exceed the cap.
    """
    n = len(elements)
    if n == 0:
        raise NotALattice("empty element list")
    if n > table_cap:
        raise MemoryBudget(f"{n} elements exceed the table cap {table_cap}")
    mat = np.zeros((n, n), dtype=bool)
    for a in range(n):
        ea = elements[a]
        for b in range(n):
            mat[a, b] = leq(ea, elements[b])
    _check_partial_order(mat)
    # Reindex along a linear extension so masks have max = highest bit.
    perm = sorted(range(n), key=lambda a: (int(mat[:, a].sum()), a))
    elements = [elements[a] for a in perm]
    mat = mat[np.ix_(perm, perm)]
    down = [_mask(mat[:, a]) for a in range(n)]
    up = [_mask(mat[a, :]) for a in range(n)]
    hasse_up: list[list[int]] = [[] for _ in range(n)]
    hasse_down: list[list[int]] = [[] for _ in range(n)]
    for a in range(n):
        strict_up_a = up[a] & ~(1 << a)
        rest = strict_up_a
        while rest:
            low = rest & -rest
            b = low.bit_length() - 1
            rest ^= low
            if not (strict_up_a & down[b] & ~(1 << b)):
                hasse_up[a].append(b)
                hasse_down[b].append(a)
    meet_table = np.empty((n, n), dtype=np.int32)
    join_table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        for b in range(a, n):
            lows = down[a] & down[b]
            if not lows:
                raise NotALattice(f"elements {a} and {b} have no lower bound")
            m = lows.bit_length() - 1
            if down[m] != lows:
                raise NotALattice(f"elements {a} and {b} have no meet")
            meet_table[a, b] = meet_table[b, a] = m
            highs = up[a] & up[b]
            if not highs:
                raise NotALattice(f"elements {a} and {b} have no upper bound")
            j = (highs & -highs).bit_length() - 1
            if up[j] != highs:
                raise NotALattice(f"elements {a} and {b} have no join")
            join_table[a, b] = join_table[b, a] = j
    bottom = int(mat.all(axis=1).nonzero()[0][0])
    top = int(mat.all(axis=0).nonzero()[0][0])
    labels = None
    if edge_label is not None:
        labels = {}
        for a in range(n):
            for b in hasse_up[a]:
                labels[(a, b)] = edge_label(elements[a], elements[b])
    lat = FiniteLattice(
        elements=list(elements),
        leq_matrix=mat,
        down=down,
        up=up,
        hasse_up=hasse_up,
        hasse_down=hasse_down,
        meet_table=meet_table,
        join_table=join_table,
        bottom=bottom,
        top=top,
        edge_labels=labels,
    )
    try:
        lat.index = {el: a for a, el in enumerate(elements)}
    except TypeError:
        pass
    return lat


def _mask(column: np.ndarray) -> int:
    return int.from_bytes(np.packbits(column, bitorder="little").tobytes(), "little")


def _check_partial_order(mat: np.ndarray) -> None:
    n = len(mat)
    if not mat.diagonal().all():
        raise NotALattice("relation is not reflexive")
    if (mat & mat.T & ~np.eye(n, dtype=bool)).any():
        raise NotALattice("relation is not antisymmetric")
    reach = (mat.astype(np.int32) @ mat.astype(np.int32)) > 0
    if (reach & ~mat).any():
        raise NotALattice("relation is not transitive")


def check_semidistributive(lat: FiniteLattice, cap: int = 400) -> bool:
    """Both semidistributive laws over all element triples."""
    n = len(lat)
    if n > cap:
        raise TooLarge(f"{n} elements exceed the semidistributivity cap {cap}")
    meet, join = lat.meet_table, lat.join_table
    for z in range(n):
        mz = meet[:, z]
        mjz = mz[join]
        same = mz[:, None] == mz[None, :]
        if (same & (mjz != mz[:, None])).any():
            return False
        jz = join[:, z]
        jmz = jz[meet]
        same = jz[:, None] == jz[None, :]
        if (same & (jmz != jz[:, None])).any():
            return False
    return True


def check_selfdual(lat: FiniteLattice, anti: Callable) -> bool:
    """Is the element map an order anti-automorphism?"""
    n = len(lat)
    try:
        perm = [lat.index[anti(el)] for el in lat.elements]
    except KeyError:
        return False
    if sorted(perm) != list(range(n)):
        return False
    p = np.array(perm)
    return bool((lat.leq_matrix == lat.leq_matrix[np.ix_(p, p)].T).all())


@dataclass
class ExtremalityReport:
    extremal: bool
    longest_chain: int
    join_irreducibles: int
    meet_irreducibles: int


def longest_from_bottom(lat: FiniteLattice) -> list[int]:
    n = len(lat)
    depth = [0] * n
    for b in range(n):  # indices form a linear extension
        for a in lat.hasse_down[b]:
            depth[b] = max(depth[b], depth[a] + 1)
    return depth


def check_extremal(lat: FiniteLattice) -> ExtremalityReport:
    longest = longest_from_bottom(lat)[lat.top]
    nj = len(lat.join_irreducibles())
    nm = len(lat.meet_irreducibles())
    return ExtremalityReport(longest == nj == nm, longest, nj, nm)


def spine_by_chains(lat: FiniteLattice) -> frozenset[int]:
    """Elements on some longest bottom-to-top chain."""
    n = len(lat)
    from_bottom = longest_from_bottom(lat)
    to_top = [0] * n
    for a in range(n - 1, -1, -1):
        for b in lat.hasse_up[a]:
            to_top[a] = max(to_top[a], to_top[b] + 1)
    total = from_bottom[lat.top]
    return frozenset(x for x in range(n) if from_bottom[x] + to_top[x] == total)


@dataclass
class Polygon:
    bottom: int
    top: int
    chains: tuple[tuple[int, ...], tuple[int, ...]]  # bottom..top, both inclusive

    @property
    def shape(self) -> tuple[int, int]:
        lengths = sorted(len(c) - 1 for c in self.chains)
        return (lengths[0], lengths[1])


def _interval_polygon(lat: FiniteLattice, lo: int, hi: int) -> Polygon | None:
    members = lat.up[lo] & lat.down[hi]
    inside = set()
    rest = members
    while rest:
        low = rest & -rest
        inside.add(low.bit_length() - 1)
        rest ^= low
    ups = {x: [y for y in lat.hasse_up[x] if y in inside] for x in inside}
    downs = {x: [y for y in lat.hasse_down[x] if y in inside] for x in inside}
    if len(ups[lo]) != 2 or len(downs[hi]) != 2 or downs[lo] or ups[hi]:
        return None
    chains = []
    for start in ups[lo]:
        chain = [lo, start]
        while chain[-1] != hi:
            step = ups[chain[-1]]
            if len(step) != 1:
                return None
            chain.append(step[0])
        chains.append(tuple(chain))
    for x in inside - {lo, hi}:
        if len(ups[x]) != 1 or len(downs[x]) != 1:
            return None
    if len(inside) != len(chains[0]) + len(chains[1]) - 2:
        return None
    return Polygon(lo, hi, (chains[0], chains[1]))


def check_polygonal(lat: FiniteLattice, allowed_shapes: set[tuple[int, int]]) -> bool:
    """Every cover-pair interval is a polygon of an allowed shape, and dually."""
    for x in range(len(lat)):
        ups = lat.hasse_up[x]
        for a in range(len(ups)):
            for b in range(a + 1, len(ups)):
                poly = _interval_polygon(lat, x, lat.join(ups[a], ups[b]))
                if poly is None or poly.shape not in allowed_shapes:
                    return False
        downs = lat.hasse_down[x]
        for a in range(len(downs)):
            for b in range(a + 1, len(downs)):
                poly = _interval_polygon(lat, lat.meet(downs[a], downs[b]), x)
                if poly is None or poly.shape not in allowed_shapes:
                    return False
    return True


def verify_polygonal_labeling(
    lat: FiniteLattice,
    rank: Callable,
    long_side_pattern: Callable | None = None,
) -> bool:
    """PL1 plus the zig-zag rank inequalities on every polygon.

    long_side_pattern, when given, is applied to the label sequence of any
    chain with three or more edges (family-specific side-label checks).
    """
    if lat.edge_labels is None:
        raise Unlabeled("lattice has no edge labels")
    labels = lat.edge_labels
    for x in range(len(lat)):
        ups = lat.hasse_up[x]
        for a in range(len(ups)):
            for b in range(a + 1, len(ups)):
                poly = _interval_polygon(lat, x, lat.join(ups[a], ups[b]))
                if poly is None:
                    return False
                sides = [
                    [labels[(c[k], c[k + 1])] for k in range(len(c) - 1)]
                    for c in poly.chains
                ]
                s, t = sides
                if s[0] != t[-1] or t[0] != s[-1]:
                    return False
                for side in sides:
                    if not _zigzag_ok([rank(lbl) for lbl in side]):
                        return False
                    if long_side_pattern is not None and len(side) >= 3:
                        if not long_side_pattern(side):
                            return False
    return True


def _zigzag_ok(ranks: list[int]) -> bool:
    p = len(ranks) - 1
    for d in range((p + 1) // 2):
        outer = max(ranks[d], ranks[p - d])
        if d + 1 > p - (d + 1):
            break
        inner = min(ranks[d + 1], ranks[p - d - 1])
        if outer >= inner:
            return False
    return True


@dataclass
class CongruenceReport:
    count: int
    principals: list[tuple[int, ...]]
    principal_of_edge: dict[tuple[int, int], int]
    forcing: LabeledPoset  # labels are principal indices


def principal_congruence(lat: FiniteLattice, x: int, y: int) -> tuple[int, ...]:
    """Smallest congruence identifying x and y, as a canonical partition."""
    n = len(lat)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    meet, join = lat.meet_table, lat.join_table
    work = [(x, y)]
    while work:
        a, b = work.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[ra] = rb
        for z in range(n):
            ma, mb = int(meet[a, z]), int(meet[b, z])
            if find(ma) != find(mb):
                work.append((ma, mb))
            ja, jb = int(join[a, z]), int(join[b, z])
            if find(ja) != find(jb):
                work.append((ja, jb))
    canon: dict[int, int] = {}
    out = []
    for a in range(n):
        r = find(a)
        out.append(canon.setdefault(r, len(canon)))
    return tuple(out)


def _coarsens(coarse: tuple[int, ...], fine: tuple[int, ...]) -> bool:
    seen: dict[int, int] = {}
    for cf, cc in zip(fine, coarse):
        if cf in seen:
            if seen[cf] != cc:
                return False
        else:
            seen[cf] = cc
    return True


def congruence_lattice(lat: FiniteLattice, cap: int = 1000) -> CongruenceReport:
    """Principal congruences of all cover edges, their forcing order, and
    the total number of congruences (order ideals of the forcing poset)."""
    n = len(lat)
    if n > cap:
        raise TooLarge(f"{n} elements exceed the congruence cap {cap}")
    principals: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    of_edge: dict[tuple[int, int], int] = {}
    for x, y in lat.cover_edges():
        part = principal_congruence(lat, x, y)
        if part not in seen:
            seen[part] = len(principals)
            principals.append(part)
        of_edge[(x, y)] = seen[part]
    k = len(principals)
    pairs = []
    for a in range(k):
        for b in range(k):
            if a != b and _coarsens(principals[b], principals[a]):
                pairs.append((a, b))  # a forces less: con_a below con_b
    forcing = LabeledPoset.from_relations(tuple(range(k)), pairs)
    count = count_order_ideals(forcing)
    return CongruenceReport(count, principals, of_edge, forcing)


def check_congruence_uniform(lat: FiniteLattice, report: CongruenceReport | None = None) -> bool:
    """Are both irreducible-to-principal-congruence maps bijections?"""
    if report is None:
        report = congruence_lattice(lat)
    ji = lat.join_irreducibles()
    mi = lat.meet_irreducibles()
    ji_cons = [report.principal_of_edge[(lat.hasse_down[j][0], j)] for j in ji]
    mi_cons = [report.principal_of_edge[(m, lat.hasse_up[m][0])] for m in mi]
    return (
        len(set(ji_cons)) == len(ji)
        and len(set(mi_cons)) == len(mi)
        and set(ji_cons) == set(mi_cons) == set(range(len(report.principals)))
    )


def to_dot(
    lat: FiniteLattice,
    name: str = "lattice",
    node_label: Callable | None = None,
    with_edge_labels: bool = True,
) -> str:
    """Hasse diagram in DOT, edges directed bottom to top."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for a, el in enumerate(lat.elements):
        text = str(node_label(el)) if node_label is not None else str(a)
        text = text.replace("\n", "\\n").replace('"', '\\"')
        lines.append(f'  n{a} [label="{text}"];')
    for a, b in sorted(lat.cover_edges()):
        if with_edge_labels and lat.edge_labels is not None:
            lines.append(f'  n{a} -> n{b} [label="{lat.edge_labels[(a, b)]}"];')
        else:
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines)


def to_json_dict(lat: FiniteLattice, node_label: Callable | None = None) -> dict:
    nodes = [
        str(node_label(el)) if node_label is not None else str(a)
        for a, el in enumerate(lat.elements)
    ]
    edges = []
    for a, b in sorted(lat.cover_edges()):
        edge = {"src": a, "dst": b}
        if lat.edge_labels is not None:
            edge["label"] = str(lat.edge_labels[(a, b)])
        edges.append(edge)
    return {"nodes": nodes, "edges": edges}
