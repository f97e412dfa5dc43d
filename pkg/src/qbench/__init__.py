"""Certification benchmark for qubit von Neumann measurements in the Fourier family."""

__version__ = "0.1.0"
