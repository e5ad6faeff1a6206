"""Exact computations with bases of the dual enveloping algebra O(N) compatible with slope filtrations."""

from .rootsys import cartan
from .dualfn import Functional, zeta, basis, dimension
from .stability import Degree, J, expand_ordered
from .polytope import pol

__all__ = ["cartan", "Functional", "zeta", "basis", "dimension", "Degree", "J", "expand_ordered", "pol"]
__version__ = "0.1.0"
