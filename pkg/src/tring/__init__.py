"""Gluing equations over finite commutative rings on triangulated pseudo 3-manifolds."""

from .rings import GaloisField, Ring, RingElement, Zn, make_ring

__all__ = [
    "GaloisField",
    "Ring",
    "RingElement",
    "Zn",
    "make_ring",
]
