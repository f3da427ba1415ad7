"""Primitive divisors of integer recurrence sequences, biased-number counts,
and prime-density heuristics, with exact large-range sieving underneath."""

__version__ = "0.1.0"

from ._kernels import BACKEND

__all__ = ["BACKEND", "__version__"]
