"""Minimal cusped hyperbolic 3-manifolds with geodesic boundary."""
__version__ = "0.1.0"
