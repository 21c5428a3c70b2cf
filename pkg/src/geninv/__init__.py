"""Generalized inverses in finite semigroups and exact matrix rings."""

__version__ = "0.1.0"
