"""Finite, exhaustively checkable models of Gamma-spaces, E-infinity monads and bar constructions."""

__version__ = "0.1.0"
