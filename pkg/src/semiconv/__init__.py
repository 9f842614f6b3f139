"""Convolution over semirings: weighted languages, polynomials, signals and images."""

from .algebra import BOOL, INT, NAT, RATIONAL, REAL, DomainError, Semiring, UnproductiveRecursion
from .keyed import KeyedVector, Monoid
from .poly import DensePoly, Poly1, PolyM, Series
from .regexp import RegExp, fix, index_word, reinterpret
from .trie import Trie, TrieSemiring, t_index

__version__ = "0.1.0"

__all__ = [
    "BOOL", "NAT", "INT", "REAL", "RATIONAL",
    "Semiring", "DomainError", "UnproductiveRecursion",
    "KeyedVector", "Monoid",
    "RegExp", "fix", "index_word", "reinterpret",
    "Trie", "TrieSemiring", "t_index",
    "Poly1", "DensePoly", "Series", "PolyM",
]
