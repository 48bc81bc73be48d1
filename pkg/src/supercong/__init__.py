"""Exact verification of supercongruences modulo p^2."""

__version__ = "0.1.0"
