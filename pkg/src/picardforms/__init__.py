"""Exact Fourier-Jacobi machinery for Picard modular forms on the Eisenstein lattice."""

__version__ = "0.1.0"
