"""Discrete d-graphs: recognition, constructions and Hamiltonian cycles."""

from .complex_core import Complex, Graph, InvalidInput, NotPureError

__version__ = "0.1.0"

__all__ = ["Complex", "Graph", "InvalidInput", "NotPureError", "__version__"]
