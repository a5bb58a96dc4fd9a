"""Rectilinear and X-architecture Steiner tree construction."""

from ._core import (
    InputError,
    InvariantError,
    Net,
    Particle,
    Point,
    RunResult,
    RunStats,
    best_in_space,
    exact_rsmt,
    fitness,
    mst_length,
    parse_netfile,
    read_netfile,
    render_svg,
    schedule,
    solve,
    solve_many,
    tree_length,
)

__all__ = [
    "InputError",
    "InvariantError",
    "Net",
    "Particle",
    "Point",
    "RunResult",
    "RunStats",
    "best_in_space",
    "exact_rsmt",
    "fitness",
    "mst_length",
    "parse_netfile",
    "read_netfile",
    "render_svg",
    "schedule",
    "solve",
    "solve_many",
    "tree_length",
]
