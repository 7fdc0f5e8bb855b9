"""Exact computations around zonotopal algebra: vector partition functions,
splines, Dahmen-Micchelli modules, their dual ideals, Ext duality and the
DPV filtration."""

from .matroid import VectorList, family_Xk

__version__ = "0.1.0"
__all__ = ["VectorList", "family_Xk", "__version__"]
