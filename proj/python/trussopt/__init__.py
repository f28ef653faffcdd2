"""Truss weight minimization over mixed catalog and sizing variables."""

from ._core import (
    Case,
    evaluate,
    generate_case,
    gradient_check,
    hamming,
    load_case,
    make_cantilever,
    make_catalog_scaling,
    make_dome,
    make_ten_bar,
    make_two_bar,
    parse_case,
    solve_enum,
    solve_oa,
)

__all__ = [
    "Case",
    "evaluate",
    "generate_case",
    "gradient_check",
    "hamming",
    "load_case",
    "make_cantilever",
    "make_catalog_scaling",
    "make_dome",
    "make_ten_bar",
    "make_two_bar",
    "parse_case",
    "solve_enum",
    "solve_oa",
]
