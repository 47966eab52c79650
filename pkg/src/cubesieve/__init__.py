"""Sieve bounds, subset-sum witnesses over Z_p and Z_q, and Hilbert-cube
dimension experiments in multiplicatively defined integer sets."""

__version__ = "0.1.0"

from . import arithsets, cube, harness, primes, sieve, sunflower, zq

__all__ = ["arithsets", "cube", "harness", "primes", "sieve", "sunflower", "zq", "__version__"]
