"""A kernel, batch checker and command-line driver for naive cubical type theory."""

__version__ = "0.1.0"
