"""Sandwich algebra: magmas with ab = a.b^-1.a structure, group functions
preserving it, and finite model search around them."""

from .groups import FiniteGroup, build_group, catalog, sandwich_of
from .magma import AxiomProfile, Magma, axiom_profile, canonicalize

__all__ = [
    "AxiomProfile",
    "FiniteGroup",
    "Magma",
    "axiom_profile",
    "build_group",
    "canonicalize",
    "catalog",
    "sandwich_of",
]
__version__ = "0.1.0"
