"""Command-line front end: enumeration, counting, Hasse export, property
checks, congruence counts, series expansion, and pointwise operations."""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from . import generate, lattice, order, series, spine
from . import irreducibles as irr
from .order import SIGMA_DOT, SIGMA_EMPTY, SIGMA_LEFT
from .tableau import FbTableau

FAMILIES = ("estam", "stam", "tam")
_FAMILY_CLASS = {"estam": "all", "stam": "small", "tam": "binary"}
_POLYGON_SHAPES = {
    "estam": {(2, 2), (2, 5)},
    "stam": {(2, 2), (2, 4)},
    "tam": {(2, 2), (2, 3)},
}


class CliError(Exception):
    pass


def _family_elements(family: str, n: int) -> list[FbTableau]:
    return list(generate.tableaux(n, _FAMILY_CLASS[family]))


def _family_lattice(family: str, n: int, table_cap: int) -> lattice.FiniteLattice:
    elements = _family_elements(family, n)
    if family == "tam":
        return lattice.build(elements, order.leq, table_cap=table_cap)
    cover_fn = order.covers if family == "estam" else order.stam_covers
    labels = {}
    for t in elements:
        for u, lbl in cover_fn(t):
            labels[(t, u)] = lbl
    return lattice.build(
        elements, order.leq, table_cap=table_cap, edge_label=lambda a, b: labels[(a, b)]
    )


def _tableau_record(t: FbTableau) -> dict:
    return {
        "n": t.n,
        "up_row": list(t.up_row),
        "left_col": list(t.left_col),
        "dots": sorted(list(c) for c in t.dot_cells()),
        "border": t.border_word(),
    }


def cmd_enumerate(args) -> int:
    stream = generate.tableaux(args.n, args.cls, args.border)
    if args.format == "jsonl":
        for t in stream:
            print(json.dumps(_tableau_record(t), separators=(",", ":")))
    elif args.format == "text":
        for t in stream:
            print(t.render())
            print()
    else:
        raise CliError(f"enumerate does not support format {args.format!r}")
    return 0


def _sequence_value(sequence: str, family: str, n: int) -> int:
    if sequence == "elements":
        return generate.count_tableaux(n, _FAMILY_CLASS[family])
    if sequence == "join-irr":
        if family == "estam":
            return 2 * math.comb(n, 2) + math.comb(n - 1, 2)
        if family == "stam":
            return (n - 1) ** 2
        return math.comb(n, 2)
    if sequence == "spine":
        if family == "estam":
            return spine.spine_count_estam(n)
        if family == "stam":
            return spine.spine_count_stam(n)
        return 1 << (n - 1)
    if sequence == "congruences":
        if family == "tam":
            return generate.catalan(n)
        return series.weighted_sum(n, family)
    raise CliError(f"unknown sequence {sequence!r}")


def cmd_count(args) -> int:
    for n in range(1, args.n_max + 1):
        print(_sequence_value(args.sequence, args.family, n))
    return 0


def cmd_hasse(args) -> int:
    lat = _family_lattice(args.family, args.n, args.table_cap)
    label = lambda t: "/".join(t.render().split("\n"))
    if args.format == "dot":
        print(lattice.to_dot(lat, name=f"{args.family}_{args.n}", node_label=label))
    elif args.format == "jsonl":
        print(json.dumps(lattice.to_json_dict(lat, node_label=label), separators=(",", ":")))
    else:
        raise CliError(f"hasse does not support format {args.format!r}")
    return 0


def _estam_heptagon_pattern(side: Sequence[order.EdgeLabel]) -> bool:
    if len(side) != 5:
        return False
    s0, s1, s2, s3, s4 = side
    s0_green = s0.sigma == SIGMA_EMPTY or (s0.sigma == SIGMA_DOT and s0.i == s0.j)
    return (
        s0_green
        and s1.sigma == SIGMA_EMPTY
        and s2.sigma == SIGMA_DOT
        and s2.i < s2.j
        and s3.sigma == s4.sigma == SIGMA_LEFT
        and s0.j == s1.j == s2.j == s3.j
        and s1.i == s2.i == s3.i == s4.i
        and s0.i > s1.i
        and s4.j < s3.j
    )


def cmd_check(args) -> int:
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    known = {
        "lattice",
        "semidistributive",
        "selfdual",
        "extremal",
        "polygonal",
        "trim",
        "congruence-uniform",
    }
    for p in props:
        if p not in known:
            raise CliError(f"unknown property {p!r}")
    n_elements = generate.count_tableaux(args.n, _FAMILY_CLASS[args.family])
    if n_elements > args.table_cap:
        raise CliError(
            f"{args.family} n={args.n} has {n_elements} elements, above the table cap "
            f"{args.table_cap}; raise --table-cap to run anyway"
        )
    heavy = {"semidistributive", "trim"} & set(props)
    if heavy and n_elements > args.sd_cap:
        raise CliError(
            f"semidistributivity sweep on {n_elements} elements is above the cap "
            f"{args.sd_cap}; raise --sd-cap to run anyway"
        )
    if "congruence-uniform" in props and n_elements > args.con_cap:
        raise CliError(
            f"congruence computation on {n_elements} elements is above the cap "
            f"{args.con_cap}; raise --con-cap to run anyway"
        )
    lat = _family_lattice(args.family, args.n, args.table_cap)
    results = {}
    sd = None
    extremal_report = None
    for prop in props:
        if prop == "lattice":
            ok = True
            for a in range(len(lat)):
                ea = lat.elements[a]
                for b in range(a, len(lat)):
                    eb = lat.elements[b]
                    if lat.index[order.meet(ea, eb)] != lat.meet(a, b):
                        ok = False
                    if lat.index[order.join(ea, eb)] != lat.join(a, b):
                        ok = False
                    if order.meet(ea, order.join(ea, eb)) != ea:
                        ok = False
                    if order.join(ea, order.meet(ea, eb)) != ea:
                        ok = False
            results[prop] = ok
        elif prop == "semidistributive":
            sd = lattice.check_semidistributive(lat, cap=args.sd_cap)
            results[prop] = sd
        elif prop == "selfdual":
            results[prop] = lattice.check_selfdual(lat, lambda t: t.conjugate())
        elif prop == "extremal":
            extremal_report = lattice.check_extremal(lat)
            results[prop] = extremal_report.extremal
        elif prop == "polygonal":
            shapes = _POLYGON_SHAPES[args.family]
            ok = lattice.check_polygonal(lat, shapes)
            if ok and lat.edge_labels is not None:
                pattern = _estam_heptagon_pattern if args.family == "estam" else None
                ok = lattice.verify_polygonal_labeling(lat, order.polygon_rank, pattern)
            results[prop] = ok
        elif prop == "trim":
            if sd is None:
                sd = lattice.check_semidistributive(lat, cap=args.sd_cap)
            if extremal_report is None:
                extremal_report = lattice.check_extremal(lat)
            results[prop] = sd and extremal_report.extremal
        elif prop == "congruence-uniform":
            report = lattice.congruence_lattice(lat, cap=args.con_cap)
            results[prop] = lattice.check_congruence_uniform(lat, report)
    failed = False
    for prop in props:
        status = "PASS" if results[prop] else "FAIL"
        failed = failed or not results[prop]
        print(f"{status} {prop} ({args.family} n={args.n})")
    return 1 if failed else 0


def cmd_irr(args) -> int:
    if args.family == "estam":
        labels = irr.estam_labels(args.n)
    elif args.family == "stam":
        labels = irr.stam_labels(args.n)
    else:
        raise CliError("irr supports families estam and stam")
    for lbl in labels:
        print(lbl)
    print(f"total: {len(labels)}")
    return 0


def cmd_spine(args) -> int:
    if args.family == "estam":
        count = spine.spine_count_estam(args.n)
    elif args.family == "stam":
        count = spine.spine_count_stam(args.n)
    else:
        count = 1 << (args.n - 1)
    if not args.list:
        print(count)
        return 0
    listed = 0
    for t in generate.tableaux(args.n, _FAMILY_CLASS[args.family]):
        if spine.is_on_spine(t):
            print(t.render())
            print()
            listed += 1
    if listed != count:
        raise CliError(f"spine stream yielded {listed} tableaux, recurrence says {count}")
    return 0


def cmd_congruences(args) -> int:
    n_elements = generate.count_tableaux(args.n, _FAMILY_CLASS[args.family])
    if n_elements > args.con_cap:
        raise CliError(
            f"congruence computation on {n_elements} elements is above the cap "
            f"{args.con_cap}; raise --con-cap to run anyway"
        )
    if args.forcing_dot:
        if args.family == "tam":
            raise CliError("forcing poset export supports families estam and stam")
        print(irr.forcing_poset(args.n, args.family).to_dot(f"forcing_{args.family}_{args.n}"))
        return 0
    lat = _family_lattice(args.family, args.n, args.table_cap)
    report = lattice.congruence_lattice(lat, cap=args.con_cap)
    print(report.count)
    return 0


def cmd_series(args) -> int:
    if args.which == "estam-cong":
        coeffs = series.congruence_series("estam", args.order).integer_coeffs()
    elif args.which == "stam-cong":
        coeffs = series.congruence_series("stam", args.order).integer_coeffs()
    elif args.which == "catalan":
        coeffs = series.catalan_series(args.order).integer_coeffs()
    else:
        raise CliError(f"unknown series {args.which!r}")
    for c in coeffs:
        print(c)
    return 0


def _read_tableau(path: str) -> FbTableau:
    with open(path, "r", encoding="utf-8") as handle:
        return FbTableau.parse(handle.read().rstrip("\n"))


def cmd_op(args) -> int:
    a = _read_tableau(args.files[0])
    if args.operation in ("meet", "join", "leq"):
        if len(args.files) != 2:
            raise CliError(f"op {args.operation} needs two tableau files")
        b = _read_tableau(args.files[1])
        if args.operation == "meet":
            print(order.meet(a, b).render())
        elif args.operation == "join":
            print(order.join(a, b).render())
        else:
            print("true" if order.leq(a, b) else "false")
        return 0
    if args.operation == "covers":
        if len(args.files) != 1:
            raise CliError("op covers needs one tableau file")
        for t, lbl in order.covers(a):
            print(lbl)
            print(t.render())
            print()
        return 0
    raise CliError(f"unknown operation {args.operation!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="estam",
        description="Exact combinatorics of fb-tableaux and their lattices.",
    )
    parser.add_argument("--threads", type=int, default=1, help="accepted for interface "
                        "compatibility; the current implementation is single-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family(p):
        p.add_argument("--family", choices=FAMILIES, default="estam")

    def add_caps(p):
        p.add_argument("--table-cap", type=int, default=20000)
        p.add_argument("--sd-cap", type=int, default=400)
        p.add_argument("--con-cap", type=int, default=1000)

    p = sub.add_parser("enumerate", help="stream tableaux")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=["all", "small", "binary"], default="all")
    p.add_argument("--border", default=None, help="border word over ^ o <")
    p.add_argument("--format", choices=["text", "jsonl"], default="jsonl")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="print a counting sequence, one value per n")
    p.add_argument("--sequence", choices=["elements", "join-irr", "spine", "congruences"],
                   required=True)
    add_family(p)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("hasse", help="emit the Hasse diagram")
    add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["dot", "jsonl"], default="dot")
    add_caps(p)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("check", help="run structural property checks")
    add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--props", required=True, help="comma-separated property list")
    add_caps(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("irr", help="list join-irreducible labels")
    add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_irr)

    p = sub.add_parser("spine", help="spine size (or members, with --list)")
    add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_spine)

    p = sub.add_parser("congruences", help="congruence lattice size (brute force)")
    add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forcing-dot", action="store_true",
                   help="emit the forcing poset in DOT instead")
    add_caps(p)
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("series", help="expand a generating function")
    p.add_argument("--which", choices=["estam-cong", "stam-cong", "catalan"], required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("op", help="apply an operation to tableau text files")
    p.add_argument("operation", choices=["meet", "join", "leq", "covers"])
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_op)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
