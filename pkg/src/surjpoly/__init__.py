"""Exact computer algebra for images of multilinear polynomials.

The main entry points are :func:`surjpoly.solver.solve`, the polynomial
types in :mod:`surjpoly.pcpoly` and the algebras in :mod:`surjpoly.backends`.
"""

__version__ = "0.1.0"
