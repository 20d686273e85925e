"""Exact homological algebra for hypersurface and complete-intersection
singularities: Koszul dg-modules, matrix factorizations, folding, and
machine-checkable reduction witnesses."""

from koszulmf._kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
