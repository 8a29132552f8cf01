"""Willmore-flow laboratory: spectral MIWF simulation near the Clifford torus."""

__version__ = "1.0.0"
