"""Semiring structures and the built-in scalar instances.

Scalars are plain Python values (``bool``, ``int``, ``float``,
``fractions.Fraction``).  The algebra lives in a companion *structure*
object, in the same way a polynomial library keeps a coefficient domain
next to its elements::

    >>> NAT.add(2, 3), NAT.mul(2, 3), BOOL.star(True)
    (5, 6, True)

Language and polynomial representations elsewhere in the package build
new structures on top of these (see :func:`semiconv.keyed.vector_semiring`,
:func:`semiconv.trie.trie_semiring`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Any, Callable, Iterable


class DomainError(ArithmeticError):
    """An operation was applied outside the domain where it is defined."""


class UnproductiveRecursion(RuntimeError):
    """A deferred value was forced while it was already being forced."""


class Semiring:
    """Operations of a (star) semiring together with its left action on itself.

    Subclasses override the primitive operations; ``scale`` is derived and
    applies the zero/one shortcuts before touching its second argument.
    """

    name = "semiring"
    zero: Any = None
    one: Any = None

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def star(self, a):
        raise DomainError(f"{self.name} has no closure operation")

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def eq(self, a, b) -> bool:
        return a == b

    def scale(self, s, a):
        if self.is_zero(s):
            return self.zero
        if self.is_one(s):
            return a
        return self.mul(s, a)

    def from_int(self, n: int):
        """Image of the natural number ``n`` (``1 + 1 + ... + 1``)."""
        acc = self.zero
        for _ in range(n):
            acc = self.add(acc, self.one)
        return acc

    def sum(self, xs: Iterable) -> Any:
        return reduce(self.add, xs, self.zero)

    def product(self, xs: Iterable) -> Any:
        return reduce(self.mul, xs, self.one)

    def power(self, a, n: int):
        if n < 0:
            raise DomainError("negative exponent")
        acc = self.one
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def __repr__(self) -> str:
        return self.name.upper()


class BoolSemiring(Semiring):
    name = "bool"
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def star(self, a):
        return True

    def from_int(self, n):
        return n > 0


class NatSemiring(Semiring):
    """Unbounded counting weights.  Closure exists only at zero."""

    name = "nat"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def star(self, a):
        if a == 0:
            return 1
        raise DomainError(f"star({a}) diverges over the naturals")

    def from_int(self, n):
        return n


class IntRing(NatSemiring):
    """Integers; used where coefficients may be negative (polynomials)."""

    name = "int"

    def neg(self, a):
        return -a


class RealSemiring(Semiring):
    """64-bit floats.  Closure is ``1/(1-p)`` on the open unit interval."""

    name = "real"
    zero = 0.0
    one = 1.0
    rel_tol = 1e-12
    abs_tol = 1e-15

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def star(self, a):
        if abs(a) >= 1:
            raise DomainError(f"star({a}) requires |p| < 1")
        return 1.0 / (1.0 - a)

    def eq(self, a, b):
        return math.isclose(a, b, rel_tol=self.rel_tol, abs_tol=self.abs_tol)

    def neg(self, a):
        return -a

    def div_int(self, a, n: int):
        return a / n

    def from_int(self, n):
        return float(n)


class RationalField(Semiring):
    """Exact rationals backed by :class:`fractions.Fraction`."""

    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def star(self, a):
        if a == 1:
            raise DomainError("star(1) is undefined over the rationals")
        return 1 / (1 - Fraction(a))

    def neg(self, a):
        return -a

    def div_int(self, a, n: int):
        return Fraction(a) / n

    def from_int(self, n):
        return Fraction(n)


BOOL = BoolSemiring()
NAT = NatSemiring()
INT = IntRing()
REAL = RealSemiring()
RATIONAL = RationalField()

SCALARS = {s.name: s for s in (BOOL, NAT, INT, REAL, RATIONAL)}


def positive(n: int) -> bool:
    """Positivity test: a semiring homomorphism from naturals to booleans."""
    return n > 0


class FunctionSemiring(Semiring):
    """Pointwise semiring on functions ``a -> b`` (intersection for ``b = bool``).

    Only useful as an oracle: equality is not decidable, so ``eq`` samples a
    caller-supplied finite domain.
    """

    def __init__(self, ring: Semiring, domain: Iterable = ()):
        self.ring = ring
        self.domain = tuple(domain)
        self.name = f"fn[{ring.name}]"
        self.zero = lambda a: ring.zero
        self.one = lambda a: ring.one

    def add(self, f, g):
        return lambda a: self.ring.add(f(a), g(a))

    def mul(self, f, g):
        return lambda a: self.ring.mul(f(a), g(a))

    def is_zero(self, f):
        return f is self.zero

    def is_one(self, f):
        return f is self.one

    def eq(self, f, g):
        return all(self.ring.eq(f(a), g(a)) for a in self.domain)


def endo(a, combine: Callable) -> Callable:
    """Cayley embedding of a monoid element as the function ``(a <>)``."""
    return lambda x: combine(a, x)
