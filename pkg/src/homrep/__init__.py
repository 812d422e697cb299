"""Exact computations with homological representations of braid-type groups."""

from .groupring import A1, A2, Elem, Ring, gre_add, gre_is_unit, gre_mul, lb_ring
from .repmatrix import RepMatrix

__version__ = "0.1.0"

__all__ = ["A1", "A2", "Elem", "Ring", "RepMatrix", "gre_add", "gre_is_unit", "gre_mul", "lb_ring"]
