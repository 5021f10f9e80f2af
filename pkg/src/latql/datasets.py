"""Small bundled contexts used by the tests, demos and documentation.

``star_alliance()`` is the airline/destination table (13 members, 9
destination regions, year 2000); ``k3x4()`` is the 3x4 context whose
attribute generalization grows the lattice from 7 to 8 concepts;
``k6x6()`` is a 6x6 context built so that its sub-context on
H = {2, 3, 5, 6} and N = {a, b, d, f} shows a derivation that differs
between the sub-context and the full context.
"""

from __future__ import annotations

from .context import FormalContext

STAR_ALLIANCE_ATTRIBUTES = (
    "Latin America", "Europe", "Canada", "Asia Pacific", "Middle East",
    "Africa", "Mexico", "Caribbean", "US",
)

_STAR_ALLIANCE_ROWS = {
    "Air Canada": "XXXXX.XXX",
    "Air New Zealand": ".X.X....X",
    "All Nippon Airways": ".X.X....X",
    "Ansett Australia": "...X.....",
    "The Austrian Airlines Group": ".XXXXX..X",
    "British Midland": ".X.......",
    "Lufthansa": "XXXXXXX.X",
    "Mexicana": "X.X...XXX",
    "Scandinavian Airlines": "XX.XX...X",
    "Singapore Airlines": ".XXXXX..X",
    "Thai Airways International": "XX.X...XX",
    "United Airlines": "XXXX..XXX",
    "VARIG": "XX.X.XXXX",
}

# reference generalized table, kept cell for cell (column order included);
# SA_GENERALIZED_FLAGGED_CELLS lists the cells that disagree with
# existential generalization of star_alliance()
SA_GENERALIZED_ATTRIBUTES = ("South America", "Europe", "Asia Pacific", "Middle East",
                             "Africa", "Caribbean", "North America")

_SA_GENERALIZED_ROWS = {
    "Air Canada": "XXXXXXX",
    "Air New Zealand": ".XX...X",
    "All Nippon Airways": ".XX...X",
    "Ansett Australia": "..X....",
    "The Austrian Airlines Group": ".XXXX.X",
    "British Midland": ".X.....",
    "Lufthansa": "XXXXX.X",
    "Mexicana": "X....XX",
    "Scandinavian Airlines": "XXX.X.X",
    "Singapore Airlines": ".XXXX.X",
    "Thai Airways International": "XXX...X",
    "United Airlines": "XXX..XX",
    "VARIG": "XXX..XX",
}

# (member, column, reference value); the computed value is the opposite
SA_GENERALIZED_FLAGGED_CELLS = frozenset({
    ("Air Canada", "Africa", True),
    ("Scandinavian Airlines", "Middle East", False),
    ("Scandinavian Airlines", "Africa", True),
    ("Thai Airways International", "Caribbean", False),
    ("VARIG", "Africa", False),
})

STAR_ALLIANCE_COVER = {
    "North America": ("Canada", "US"),
    "South America": ("Mexico", "Latin America"),
}


def _from_strings(objects, attributes, rows, name=""):
    table = [[ch == "X" for ch in rows[g]] for g in objects]
    return FormalContext(objects, attributes, table, name=name)


def star_alliance() -> FormalContext:
    return _from_strings(list(_STAR_ALLIANCE_ROWS), STAR_ALLIANCE_ATTRIBUTES,
                         _STAR_ALLIANCE_ROWS, name="Star Alliance")


def star_alliance_generalized_table() -> FormalContext:
    """The reference generalized Star Alliance table, cell for cell."""
    return _from_strings(list(_SA_GENERALIZED_ROWS), SA_GENERALIZED_ATTRIBUTES,
                         _SA_GENERALIZED_ROWS, name="Star Alliance (generalized)")


def k3x4() -> FormalContext:
    return _from_strings(["g1", "g2", "g3"], ["m1", "m2", "m3", "m4"],
                         {"g1": "..XX", "g2": ".X.X", "g3": "X.X."}, name="K")


def k3x4_generalized_table() -> FormalContext:
    """Reference table for k3x4 with m1 and m2 merged into m12."""
    return _from_strings(["g1", "g2", "g3"], ["m12", "m3", "m4"],
                         {"g1": ".XX", "g2": "X.X", "g3": "XX."}, name="K_gen")


def k6x6() -> FormalContext:
    rows = {
        "1": "X.X...",
        "2": "XX.XX.",
        "3": "XXXXX.",
        "4": "XX.XXX",
        "5": "XX.X.X",
        "6": "..X..X",
    }
    return _from_strings(list(rows), list("abcdef"), rows, name="K6x6")
