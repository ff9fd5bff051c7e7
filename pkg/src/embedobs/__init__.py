"""Embedding and coincidence obstructions: Stiefel-Whitney duals, Z/2-indices
of deleted products, van Kampen-Flores covers, PL coincidence witnesses and
K-theory gamma operations."""

__version__ = "0.1.0"
