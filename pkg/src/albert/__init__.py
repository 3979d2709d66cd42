"""Exact-arithmetic Albert algebras: Tits constructions, certified norm
similarities, and independently checkable one-parameter equivalence
certificates."""

__version__ = "0.1.0"
