"""Combinatorics of m-diagonals in a polygon with two inner polygons."""

from . import angulation, category, colored_quiver, render, surface
from .angulation import Angulation, flip, flip_inverse, initial_angulation
from .colored_quiver import ColoredQuiver, mutate, mutate_formula
from .surface import BoundaryPath, Bridge, Split, SurfaceSpec, Tangent

__all__ = [
    "Angulation", "BoundaryPath", "Bridge", "ColoredQuiver", "Split", "SurfaceSpec",
    "Tangent", "angulation", "category", "colored_quiver", "flip", "flip_inverse",
    "initial_angulation", "mutate", "mutate_formula", "render", "surface",
]
__version__ = "0.1.0"
