"""Exact computation of triangular bases of bipartite quantum cluster algebras."""

__version__ = "0.1.0"
