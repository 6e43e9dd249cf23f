"""Chern data of monad bundles and the omalous condition on four families of varieties."""

__version__ = "0.1.0"
