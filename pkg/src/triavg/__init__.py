"""Exact computations for weighted averaging operators, relative averaging
operators, triassociative algebras and their cohomology and homotopy theory."""

__version__ = "0.1.0"
