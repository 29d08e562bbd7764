"""Exact enumerative combinatorics toolkit."""

from .poly import BiPoly, Poly
from .linalg import ExactMatrix, det_exact

__version__ = "0.1.0"

__all__ = ["Poly", "BiPoly", "ExactMatrix", "det_exact", "__version__"]
