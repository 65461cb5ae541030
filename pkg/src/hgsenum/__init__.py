"""Enumerate Hopf-Galois structures on separable extensions of squarefree degree."""

__version__ = "0.1.0"
