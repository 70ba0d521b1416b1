"""Exact Chow-ring intersection theory and curve counts on Hilbert-scheme bundles."""
from .exact import N, ParamPoly
from .ring import GradedRing, RingElement, integrate, make_ring, projective_bundle, product_ring

__version__ = "0.1.0"

__all__ = ["N", "ParamPoly", "GradedRing", "RingElement", "integrate", "make_ring",
           "projective_bundle", "product_ring", "__version__"]
