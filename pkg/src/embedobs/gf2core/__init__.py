"""Exact GF(2) linear algebra and truncated polynomial arithmetic."""

from .bitmatrix import BitMatrix, ShapeError, kernel_basis, pack, rank, solve, unpack
from .domains import GF2, GF2_DOMAIN, ZZ, Domain, Integers, IntegersMod
from .kring import KElement, SpecialKRing
from .poly import (
    Generator,
    PolyRing,
    PresentationMismatch,
    TruncatedPoly,
    gf2_truncated_ring,
    poly_mul,
    series_invert,
)

__all__ = [
    "BitMatrix",
    "Domain",
    "GF2",
    "GF2_DOMAIN",
    "Generator",
    "Integers",
    "IntegersMod",
    "KElement",
    "PolyRing",
    "PresentationMismatch",
    "ShapeError",
    "SpecialKRing",
    "TruncatedPoly",
    "ZZ",
    "gf2_truncated_ring",
    "kernel_basis",
    "pack",
    "poly_mul",
    "rank",
    "series_invert",
    "solve",
    "unpack",
]
