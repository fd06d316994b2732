"""Exact computations with Lagrangian subalgebras, Manin triples and wonderful compactifications."""

__version__ = "0.1.0"
