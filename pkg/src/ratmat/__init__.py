"""Exact zero/pole structure of rational matrix functions."""

from .exactalg import GaussRat, Poly, RatFun, Z
from .matfun import MatPoly, RatMatFun, ratmat_from_entries

__version__ = "0.1.0"

__all__ = ["GaussRat", "Poly", "RatFun", "Z", "MatPoly", "RatMatFun", "ratmat_from_entries", "__version__"]
