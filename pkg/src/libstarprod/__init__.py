"""Exact star products on duals of Lie algebras, their orbits and gluings."""

__all__ = [
    "command_line",
    "expr",
    "fuzzy",
    "glue",
    "liealg",
    "loader",
    "orbit",
    "poly",
    "report",
    "star",
    "suites",
    "uea",
    "weyl",
]
