"""Analyticity-radius diagnostics for the defocusing nonlinear Schrödinger equation."""

__version__ = "0.1.0"
