"""Exact computations with operads, cooperads, twisting morphisms and bar/cobar constructions."""

__version__ = "0.1.0"
