"""Python bindings for the corruga library."""

from ._core import (
    Analysis,
    Chart,
    analyze,
    builtin_names,
    circle_section,
    dislocation,
    l_section,
    square_section,
    verify,
    warping,
)

__all__ = [
    "Analysis",
    "Chart",
    "analyze",
    "builtin_names",
    "circle_section",
    "dislocation",
    "l_section",
    "square_section",
    "verify",
    "warping",
]
