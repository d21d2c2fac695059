"""Exact computations with crystallographic groups Crys(G; M; T) for small p-groups G."""

from .catalog import build, parse_descriptor
from .cohomology import Cocycle, h1, is_coboundary
from .crysgroup import CrysGroup, classify, is_torsion_free, isomorphic
from .groupcore import PGroup
from .zglattice import GLattice

__all__ = ["build", "parse_descriptor", "Cocycle", "h1", "is_coboundary", "CrysGroup",
           "classify", "is_torsion_free", "isomorphic", "PGroup", "GLattice"]
__version__ = "0.1.0"
