"""Roots of Bernstein-Sato polynomials of monomial ideals, computed exactly
from the Newton polyhedron of the ideal."""

__version__ = "0.1.0"

from .engine import (  # noqa: E402
    EngineConfig,
    ResidueSet,
    RootSet,
    all_roots,
    analyze,
    roots_mod_z,
)
from .newton import MonomialIdeal, build_polyhedron, enumerate_faces  # noqa: E402

__all__ = [
    "EngineConfig",
    "MonomialIdeal",
    "ResidueSet",
    "RootSet",
    "all_roots",
    "analyze",
    "build_polyhedron",
    "enumerate_faces",
    "roots_mod_z",
]
