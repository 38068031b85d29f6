"""Exact K-theory bookkeeping for reduced semigroup C*-algebras."""

__version__ = "0.1.0"
