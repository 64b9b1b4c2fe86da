"""Symbolic verification engine for the symmetry algebra of the (2+1)-dimensional
coupled nonlinear Schrodinger system."""

__version__ = "0.1.0"
