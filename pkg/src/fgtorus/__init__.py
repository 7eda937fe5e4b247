"""Balanced Fock–Goncharov quantum tori of punctured surfaces.

Exact lattice, center, homology, mutation and representation computations for
the n-triangulation quiver of an ideal triangulation.
"""

__version__ = "0.1.0"
