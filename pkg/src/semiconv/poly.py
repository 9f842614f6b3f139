"""Polynomials and power series as convolution algebras.

* :class:`Poly1` - sparse univariate polynomials: a :class:`KeyedVector`
  from exponents to coefficients, multiplied by convolution over the
  additive monoid of naturals.
* :class:`DensePoly` - the same thing as a coefficient list, multiplied by
  long multiplication.
* :class:`Series` - lazy power series with a grow-only coefficient cache;
  enough to define ``sin``, ``cos`` and ``exp`` by their differential
  equations.
* :class:`PolyM` - multivariate polynomials keyed by monomials, which are
  themselves vectors ``variable -> exponent``.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from .algebra import INT, NAT, RATIONAL, DomainError, Semiring, UnproductiveRecursion
from .keyed import NAT_KEYS, KeyedVector, Monoid


def _fmt_coef(c) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, float) and c.is_integer():
        return str(int(c))
    return str(c)


def _render(terms: list[tuple[str, Any]], ring: Semiring) -> str:
    """Join ``(monomial_text, coefficient)`` pairs; ``""`` is the constant term."""
    out = []
    for mono, c in terms:
        neg = _is_negative(c)
        mag = -c if neg else c
        if not mono:
            body = _fmt_coef(mag)
        elif ring.is_one(mag):
            body = mono
        else:
            text = _fmt_coef(mag)
            body = f"{text}*{mono}" if "/" in text or "." in text else f"{text}{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) if out else "0"


def _is_negative(c) -> bool:
    try:
        return c < 0
    except TypeError:
        return False


class Poly1:
    """Sparse univariate polynomial ``{exponent: coefficient}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Any] | Iterable | KeyedVector = (), ring: Semiring = INT):
        if isinstance(coeffs, KeyedVector):
            self.coeffs = coeffs
        else:
            if not isinstance(coeffs, Mapping):
                coeffs = dict(enumerate(coeffs))
            self.coeffs = KeyedVector(coeffs, ring, NAT_KEYS)

    @property
    def ring(self) -> Semiring:
        return self.coeffs.ring

    @classmethod
    def x(cls, ring: Semiring = INT) -> "Poly1":
        return cls(KeyedVector.single(1, ring, NAT_KEYS))

    @classmethod
    def const(cls, c, ring: Semiring = INT) -> "Poly1":
        return cls(KeyedVector.value(c, ring, NAT_KEYS))

    def __getitem__(self, i: int):
        return self.coeffs[i]

    @property
    def degree(self) -> int:
        return max(self.coeffs.keys(), default=-1)

    def __add__(self, other: "Poly1") -> "Poly1":
        return Poly1(self.coeffs + other.coeffs)

    def __mul__(self, other: "Poly1") -> "Poly1":
        return Poly1(self.coeffs * other.coeffs)

    def __pow__(self, n: int) -> "Poly1":
        return p_pow(self, n)

    def scale(self, s) -> "Poly1":
        return Poly1(self.coeffs.scale(s))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly1) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        return p_eval(self, x)

    def to_dense(self) -> "DensePoly":
        return DensePoly([self.coeffs[i] for i in range(self.degree + 1)], self.ring)

    def __str__(self) -> str:
        return p_show(self)

    def __repr__(self) -> str:
        return f"Poly1({p_show(self)!r})"


def p_pow(p, n: int):
    if n < 0:
        raise DomainError("negative exponent")
    if isinstance(p, Poly1):
        return Poly1(p.coeffs ** n)
    acc = type(p).const(p.ring.one, p.ring)
    for _ in range(n):
        acc = acc * p
    return acc


def p_eval(p, x):
    """Horner evaluation of a :class:`Poly1` or :class:`DensePoly`."""
    ring = p.ring
    if isinstance(p, Poly1):
        coeffs = [p.coeffs[i] for i in range(p.degree + 1)]
    else:
        coeffs = list(p.coeffs)
    acc = ring.zero
    for c in reversed(coeffs):
        acc = ring.add(ring.mul(acc, x), c)
    return acc


class DensePoly:
    """Coefficient list, position = exponent, trailing zeros trimmed."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable = (), ring: Semiring = INT):
        cs = list(coeffs)
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.ring = ring

    @classmethod
    def const(cls, c, ring: Semiring = INT) -> "DensePoly":
        return cls([c], ring)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "DensePoly") -> "DensePoly":
        return DensePoly(dense_add(self.coeffs, other.coeffs, self.ring), self.ring)

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        return DensePoly(dense_mul(self.coeffs, other.coeffs, self.ring), self.ring)

    def __pow__(self, n: int) -> "DensePoly":
        return p_pow(self, n)

    def scale(self, s) -> "DensePoly":
        ring = self.ring
        return DensePoly([ring.mul(s, c) for c in self.coeffs], ring)

    def __eq__(self, other) -> bool:
        return isinstance(other, DensePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_sparse(self) -> Poly1:
        return Poly1(dict(enumerate(self.coeffs)), self.ring)

    def __repr__(self) -> str:
        return f"DensePoly({list(self.coeffs)!r})"


def dense_add(p: Sequence, q: Sequence, ring: Semiring = INT) -> list:
    """Pointwise sum; the longer tail is kept as is."""
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, b in enumerate(q):
        out[i] = ring.add(out[i], b)
    return out


def dense_mul(p: Sequence, q: Sequence, ring: Semiring = INT) -> list:
    """Long multiplication: ``(a : dp) * q = a . q + (0 : dp * q)``.

    Unrolled into a loop over ``p`` so the recursion depth does not grow
    with the degree.  Coefficient ``k`` accumulates ``p[i] * q[k - i]`` in
    increasing ``i``.
    """
    if not p or not q:
        return []
    out = [ring.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if ring.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return out


# -- power series -------------------------------------------------------------


class Series:
    """A power series whose coefficients are produced on demand.

    ``producer(n)`` computes coefficient ``n`` and may read earlier
    coefficients of any series, including this one.  Each coefficient is
    produced once; later reads hit the cache.
    """

    def __init__(self, producer: Optional[Callable[[int], Any]] = None, ring: Semiring = RATIONAL):
        self._producer = producer
        self.ring = ring
        self._cache: list = []
        self._lock = threading.RLock()
        self._busy = False

    @classmethod
    def deferred(cls, ring: Semiring = RATIONAL) -> "Series":
        """A series to be defined later with :meth:`define` (for recursion)."""
        return cls(None, ring)

    def define(self, other: "Series") -> "Series":
        self._producer = other.__getitem__
        return self

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, ring: Semiring = RATIONAL) -> "Series":
        cs = list(coeffs)
        return cls(lambda n: cs[n] if n < len(cs) else ring.zero, ring)

    @classmethod
    def const(cls, c, ring: Semiring = RATIONAL) -> "Series":
        return cls.from_coeffs([c], ring)

    def __getitem__(self, n: int):
        cache = self._cache
        if n < len(cache):
            return cache[n]
        with self._lock:
            while len(cache) <= n:
                if self._producer is None:
                    raise NameError("series used before it was defined")
                if self._busy:
                    raise UnproductiveRecursion(
                        f"coefficient {len(cache)} depends on itself"
                    )
                self._busy = True
                try:
                    c = self._producer(len(cache))
                finally:
                    self._busy = False
                cache.append(c)
            return cache[n]

    def coefficients(self, count: int) -> list:
        return [self[i] for i in range(count)]

    def __add__(self, other: "Series") -> "Series":
        ring = self.ring
        return Series(lambda n: ring.add(self[n], other[n]), ring)

    def __neg__(self) -> "Series":
        return self.scale(self.ring.neg(self.ring.one))

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, s) -> "Series":
        ring = self.ring
        return Series(lambda n: ring.mul(s, self[n]), ring)

    def __mul__(self, other: "Series") -> "Series":
        ring = self.ring
        return Series(
            lambda n: ring.sum(ring.mul(self[i], other[n - i]) for i in range(n + 1)), ring
        )

    def __repr__(self) -> str:
        shown = ", ".join(_fmt_coef(c) for c in self._cache[:8])
        return f"Series([{shown}{', ...' if True else ''}])"


def s_integral(s: Series) -> Series:
    """Coefficient 0 is zero and is produced without reading ``s``."""
    ring = s.ring
    div = getattr(ring, "div_int", None)
    if div is None:
        raise DomainError(f"integration needs division, which {ring.name} lacks")
    return Series(lambda n: ring.zero if n == 0 else div(s[n - 1], n), ring)


def s_derivative(s: Series) -> Series:
    ring = s.ring
    return Series(lambda n: ring.mul(ring.from_int(n + 1), s[n + 1]), ring)


def ode_series(ring: Semiring = RATIONAL) -> dict[str, Series]:
    """``sin = integral cos``, ``cos = 1 - integral sin``, ``exp = 1 + integral exp``."""
    sin = Series.deferred(ring)
    cos = Series.deferred(ring)
    exp = Series.deferred(ring)
    one = Series.const(ring.one, ring)
    sin.define(s_integral(cos))
    cos.define(one - s_integral(sin))
    exp.define(one + s_integral(exp))
    return {"sin": sin, "cos": cos, "exp": exp}


def dump_series(s: Series, count: int) -> str:
    return "".join(f"{i}\t{_fmt_coef(c)}\n" for i, c in enumerate(s.coefficients(count)))


# -- multivariate -------------------------------------------------------------


def monomial(exponents: Mapping[str, int] | Iterable = ()) -> KeyedVector:
    return KeyedVector(exponents, NAT, None)


MONOMIAL = Monoid("monomial", monomial(), lambda m, n: m + n)


class PolyM:
    """Multivariate polynomial ``{monomial: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | KeyedVector = (), ring: Semiring = INT):
        if isinstance(terms, KeyedVector):
            self.terms = terms
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            self.terms = KeyedVector(
                ((k if isinstance(k, KeyedVector) else monomial(k), c) for k, c in items),
                ring,
                MONOMIAL,
            )

    @property
    def ring(self) -> Semiring:
        return self.terms.ring

    @classmethod
    def const(cls, c, ring: Semiring = INT) -> "PolyM":
        return cls(KeyedVector.value(c, ring, MONOMIAL))

    def __getitem__(self, exponents) -> Any:
        key = exponents if isinstance(exponents, KeyedVector) else monomial(exponents)
        return self.terms[key]

    def __add__(self, other: "PolyM") -> "PolyM":
        return PolyM(self.terms + other.terms)

    def __mul__(self, other: "PolyM") -> "PolyM":
        return PolyM(self.terms * other.terms)

    def __pow__(self, n: int) -> "PolyM":
        return PolyM(self.terms ** n)

    def scale(self, s) -> "PolyM":
        return PolyM(self.terms.scale(s))

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyM) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def variables(self) -> list[str]:
        return sorted({v for m in self.terms for v in m})

    def coefficient_map(self) -> dict[tuple, Any]:
        """``{((var, exp), ...): coefficient}`` with plain tuples as keys."""
        return {tuple(m.items()): c for m, c in self.terms.items()}

    def __str__(self) -> str:
        return p_show(self)

    def __repr__(self) -> str:
        return f"PolyM({p_show(self)!r})"


def m_var(name: str, ring: Semiring = INT) -> PolyM:
    """``single . single``: the polynomial ``name``."""
    return PolyM(KeyedVector.single(monomial({name: 1}), ring, MONOMIAL))


def mono_pow(env: Mapping[str, Any], m: KeyedVector, ring: Semiring):
    """``prod(env[v] ** e for v, e in m)``."""
    acc = ring.one
    for v, e in m.items():
        if v not in env:
            raise KeyError(f"unbound variable {v!r}")
        acc = ring.mul(acc, ring.power(env[v], e))
    return acc


def m_eval(p: PolyM, env: Mapping[str, Any]):
    ring = p.ring
    return ring.sum(ring.mul(c, mono_pow(env, m, ring)) for m, c in p.terms.items())


def _mono_text(m: Iterable[tuple[str, int]]) -> str:
    return "".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def p_show(p) -> str:
    """Render by decreasing total degree, ties in graded-lex variable order."""
    if isinstance(p, Poly1):
        items = [(((("x", e),) if e else ()), c) for e, c in p.coeffs.items()]
        ring = p.ring
    elif isinstance(p, PolyM):
        items = [(tuple(m.items()), c) for m, c in p.terms.items()]
        ring = p.ring
    else:
        raise TypeError(f"cannot render {type(p).__name__}")
    variables = sorted({v for m, _ in items for v, _ in m})

    def order(item):
        exps = dict(item[0])
        return (-sum(exps.values()), tuple(-exps.get(v, 0) for v in variables))

    items.sort(key=order)
    return _render([(_mono_text(m), c) for m, c in items], ring)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
# A variable is one letter, optionally with a numeric subscript (x, y2, z_10),
# so juxtaposition like ``xy`` reads as a product.
_FACTOR = re.compile(r"([^\W\d_](?:_?\d+)?)(?:\^(\d+))?|(\d+(?:/\d+)?)")


def parse_poly(text: str) -> PolyM:
    """Parse sums of terms like ``3x^2y - 1/2z + 7``; ``*`` between factors is optional."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    terms: dict = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or not m.group(2).strip():
            raise ValueError(f"cannot parse polynomial at position {pos}: {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).replace("*", "").replace(" ", "")
        coef = Fraction(sign)
        exps: dict[str, int] = {}
        i = 0
        while i < len(body):
            f = _FACTOR.match(body, i)
            if not f or f.end() == i:
                raise ValueError(f"cannot parse term {m.group(2).strip()!r}")
            if f.group(3):
                coef *= Fraction(f.group(3))
            else:
                exps[f.group(1)] = exps.get(f.group(1), 0) + int(f.group(2) or 1)
            i = f.end()
        key = monomial(exps)
        terms[key] = terms.get(key, 0) + coef
        pos = m.end()
    if all(c.denominator == 1 for c in terms.values()):
        return PolyM({k: int(c) for k, c in terms.items()}, INT)
    return PolyM(terms, RATIONAL)
