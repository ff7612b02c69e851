"""Exact combinatorics of fb-tableaux and their Tamari-style lattices."""

from .tableau import Entry, FbTableau, cohook, parse_text, render_text
from .order import (
    EdgeLabel,
    changeable_cells,
    apply_move,
    covers,
    cocovers,
    from_changeables,
    join,
    leq,
    meet,
    polygon_rank,
    stam_covers,
)
from .generate import (
    bracket_of,
    bracket_vectors,
    catalan,
    count_tableaux,
    fb_count,
    tableau_of_bracket,
    tableaux,
)

__all__ = [
    "Entry",
    "FbTableau",
    "EdgeLabel",
    "cohook",
    "parse_text",
    "render_text",
    "leq",
    "meet",
    "join",
    "covers",
    "cocovers",
    "changeable_cells",
    "apply_move",
    "from_changeables",
    "stam_covers",
    "polygon_rank",
    "tableaux",
    "count_tableaux",
    "fb_count",
    "catalan",
    "bracket_of",
    "bracket_vectors",
    "tableau_of_bracket",
]
