"""The monoid semiring over finite maps.

A :class:`KeyedVector` is a finitely supported function from monoid keys
to scalars, stored sparsely (zero weights are never kept).  Addition is
pointwise; multiplication is convolution::

    p * q = sum(u <> v |-> p[u] * q[v] for u in p for v in q)

With word keys this is weighted language concatenation, with natural
number keys it is polynomial multiplication, and with pair keys it is
two dimensional convolution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional

from .algebra import NAT, DomainError, Semiring


@dataclass(frozen=True)
class Monoid:
    """A monoid on keys, with an optional enumeration of factorizations."""

    name: str
    identity: Any
    combine: Callable[[Any, Any], Any]
    splits: Optional[Callable[[Any], list]] = None
    parts: tuple = ()

    def __repr__(self) -> str:
        return f"Monoid({self.name})"


def word_splits(w: str) -> list[tuple[str, str]]:
    return [(w[:i], w[i:]) for i in range(len(w) + 1)]


def nat_splits(n: int) -> list[tuple[int, int]]:
    return [(i, n - i) for i in range(n + 1)]


WORD = Monoid("word", "", lambda u, v: u + v, word_splits)
NAT_KEYS = Monoid("nat", 0, lambda m, n: m + n, nat_splits)


def pair_monoid(first: Monoid, second: Monoid) -> Monoid:
    """Componentwise product of two monoids; keys are 2-tuples."""

    def combine(a, b):
        return (first.combine(a[0], b[0]), second.combine(a[1], b[1]))

    def pair_splits(k):
        return [
            ((u1, u2), (v1, v2))
            for (u1, v1), (u2, v2) in itertools.product(first.splits(k[0]), second.splits(k[1]))
        ]

    return Monoid(
        f"({first.name},{second.name})",
        (first.identity, second.identity),
        combine,
        pair_splits if first.splits and second.splits else None,
        (first, second),
    )


def splits(k, monoid: Monoid = WORD) -> list:
    """All pairs ``(u, v)`` with ``u <> v == k``, each exactly once."""
    if monoid.splits is None:
        raise TypeError(f"{monoid.name} keys are not splittable")
    return monoid.splits(k)


def _sort_key(k):
    # Mixed-type keys (e.g. bool and int together) still need a total order.
    return (type(k).__name__, k)


@total_ordering
class KeyedVector:
    """Immutable sparse vector ``key -> scalar`` with semiring operations.

    ``ring`` is the scalar structure; ``monoid`` is only needed for
    multiplication.  Entries are canonical: sorted by key, no zero weights.
    """

    __slots__ = ("ring", "monoid", "_entries", "_hash")

    def __init__(
        self,
        entries: Mapping | Iterable[tuple] = (),
        ring: Semiring = NAT,
        monoid: Optional[Monoid] = WORD,
    ):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict = {}
        for k, v in items:
            acc[k] = ring.add(acc[k], v) if k in acc else v
        self.ring = ring
        self.monoid = monoid
        self._entries = {
            k: acc[k] for k in sorted(acc, key=_sort_key) if not ring.is_zero(acc[k])
        }
        self._hash = None

    @classmethod
    def _canonical(cls, entries: dict, ring, monoid) -> "KeyedVector":
        # Trusted fast path: entries already summed and nonzero.
        self = cls.__new__(cls)
        self.ring = ring
        self.monoid = monoid
        self._entries = {k: entries[k] for k in sorted(entries, key=_sort_key)}
        self._hash = None
        return self

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, ring: Semiring = NAT, monoid: Optional[Monoid] = WORD):
        return cls._canonical({}, ring, monoid)

    @classmethod
    def one(cls, ring: Semiring = NAT, monoid: Monoid = WORD):
        return cls.singleton(monoid.identity, ring.one, ring, monoid)

    @classmethod
    def singleton(cls, key, weight, ring: Semiring = NAT, monoid=WORD):
        if ring.is_zero(weight):
            return cls.zero(ring, monoid)
        return cls._canonical({key: weight}, ring, monoid)

    @classmethod
    def single(cls, key, ring: Semiring = NAT, monoid=WORD):
        return cls.singleton(key, ring.one, ring, monoid)

    @classmethod
    def value(cls, weight, ring: Semiring = NAT, monoid: Monoid = WORD):
        return cls.singleton(monoid.identity, weight, ring, monoid)

    def _like(self, entries: dict) -> "KeyedVector":
        return KeyedVector._canonical(entries, self.ring, self.monoid)

    # -- access --------------------------------------------------------

    def __getitem__(self, key):
        return self._entries.get(key, self.ring.zero)

    index = __getitem__

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator:
        return iter(self._entries)

    def keys(self):
        return self._entries.keys()

    def items(self):
        return self._entries.items()

    def is_zero(self) -> bool:
        return not self._entries

    def is_one(self) -> bool:
        if self.monoid is None or len(self._entries) != 1:
            return False
        ((k, v),) = self._entries.items()
        return k == self.monoid.identity and self.ring.is_one(v)

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "KeyedVector") -> "KeyedVector":
        if not self._entries:
            return other
        if not other._entries:
            return self
        ring = self.ring
        acc = dict(self._entries)
        for k, v in other._entries.items():
            if k in acc:
                s = ring.add(acc[k], v)
                if ring.is_zero(s):
                    del acc[k]
                else:
                    acc[k] = s
            else:
                acc[k] = v
        return self._like(acc)

    def __mul__(self, other: "KeyedVector") -> "KeyedVector":
        return convolve(self, other)

    def __pow__(self, n: int) -> "KeyedVector":
        if n < 0:
            raise DomainError("negative exponent")
        acc = KeyedVector.one(self.ring, self.monoid)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def scale(self, s) -> "KeyedVector":
        """Left action ``s . p``: every weight multiplied on the left by ``s``."""
        ring = self.ring
        if ring.is_zero(s):
            return KeyedVector.zero(ring, self.monoid)
        if ring.is_one(s):
            return self
        acc = {}
        for k, v in self._entries.items():
            w = ring.mul(s, v)
            if not ring.is_zero(w):
                acc[k] = w
        return self._like(acc)

    def map_weights(self, f: Callable, ring: Optional[Semiring] = None):
        ring = ring or self.ring
        return KeyedVector(((k, f(v)) for k, v in self._entries.items()), ring, self.monoid)

    def truncate(self, size: Callable[[Any], int], limit: int) -> "KeyedVector":
        """Drop keys whose ``size`` exceeds ``limit``."""
        return self._like({k: v for k, v in self._entries.items() if size(k) <= limit})

    # -- comparison ------------------------------------------------------

    def _cmp_items(self):
        return [(_sort_key(k), v) for k, v in self._entries.items()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, KeyedVector):
            return NotImplemented
        return self._entries == other._entries

    def __lt__(self, other: "KeyedVector") -> bool:
        return self._cmp_items() < other._cmp_items()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v!r}" for k, v in self._entries.items())
        return f"KeyedVector({{{body}}})"


def singleton(key, weight, ring: Semiring = NAT, monoid: Monoid = WORD) -> KeyedVector:
    return KeyedVector.singleton(key, weight, ring, monoid)


def add(p: KeyedVector, q: KeyedVector) -> KeyedVector:
    return p + q


def scale(s, p: KeyedVector) -> KeyedVector:
    return p.scale(s)


def convolve(p: KeyedVector, q: KeyedVector) -> KeyedVector:
    """Monoid-semiring product, materializing all ``len(p) * len(q)`` terms."""
    monoid = p.monoid or q.monoid
    if monoid is None:
        raise TypeError("convolution needs a key monoid")
    ring = p.ring
    combine = monoid.combine
    acc: dict = {}
    for u, a in p._entries.items():
        for v, b in q._entries.items():
            w = combine(u, v)
            t = ring.mul(a, b)
            acc[w] = ring.add(acc[w], t) if w in acc else t
    return KeyedVector._canonical(
        {k: v for k, v in acc.items() if not ring.is_zero(v)}, ring, monoid
    )


def convolve_by_splits(p: KeyedVector, q: KeyedVector, w) -> Any:
    """Weight of ``w`` in ``p * q``, summing over the factorizations of ``w``.

    Independent of :func:`convolve`: it never combines keys, it only splits.
    """
    monoid = p.monoid or q.monoid
    ring = p.ring
    return ring.sum(ring.mul(p[u], q[v]) for u, v in splits(w, monoid))


def decompose(p: KeyedVector) -> list[KeyedVector]:
    """The entry-wise singletons whose sum is ``p``."""
    return [KeyedVector.singleton(k, v, p.ring, p.monoid) for k, v in p.items()]


# -- nesting -----------------------------------------------------------------


class VectorSemiring(Semiring):
    """KeyedVectors over a fixed ring and monoid, viewed as scalars themselves."""

    def __init__(self, ring: Semiring, monoid: Optional[Monoid]):
        self.ring = ring
        self.monoid = monoid
        self.name = f"vec[{ring.name},{monoid.name if monoid else '-'}]"
        self.zero = KeyedVector.zero(ring, monoid)
        self.one = KeyedVector.one(ring, monoid) if monoid else None

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return convolve(a, b)

    def is_zero(self, a):
        return a.is_zero()

    def is_one(self, a):
        return a.is_one()

    def single(self, key):
        return KeyedVector.single(key, self.ring, self.monoid)

    def value(self, b):
        return KeyedVector.value(b, self.ring, self.monoid)


def vector_semiring(ring: Semiring, monoid: Optional[Monoid]) -> VectorSemiring:
    return VectorSemiring(ring, monoid)


class TruncatedWordSemiring(VectorSemiring):
    """Word-keyed vectors with every key longer than ``limit`` discarded.

    Products never shorten keys, so weights of words up to ``limit`` are
    exact.  That makes closure computable: iterate ``q = s . (1 + p' * q)``
    (``p'`` is ``p`` without its empty-word weight, ``s = star(p[""])``)
    ``limit + 1`` times.
    """

    def __init__(self, ring: Semiring, limit: int):
        super().__init__(ring, WORD)
        self.limit = limit
        self.name = f"vec[{ring.name},word<={limit}]"

    def _cut(self, p: KeyedVector) -> KeyedVector:
        return p.truncate(len, self.limit)

    def mul(self, a, b):
        return self._cut(convolve(a, b))

    def star(self, p):
        s = self.ring.star(p[""])
        rest = KeyedVector(((k, v) for k, v in p.items() if k), self.ring, WORD)
        one = self.one
        q = self.zero
        for _ in range(self.limit + 1):
            q = (one + self.mul(rest, q)).scale(s)
        return q

    def single(self, key):
        return self._cut(super().single(key))


def curry_vec(p: KeyedVector) -> KeyedVector:
    """``{(a, x): c}`` to ``{a: {x: c}}``.  Inner vectors live in a nested semiring."""
    pm = p.monoid
    if pm is None or len(pm.parts) != 2:
        raise TypeError("curry_vec needs pair keys")
    outer_monoid, inner_monoid = pm.parts
    inner = VectorSemiring(p.ring, inner_monoid)
    rows: dict = {}
    for (a, x), c in p.items():
        rows.setdefault(a, []).append((x, c))
    return KeyedVector(
        ((a, KeyedVector(xs, p.ring, inner_monoid)) for a, xs in rows.items()),
        inner,
        outer_monoid,
    )


def uncurry_vec(p: KeyedVector, monoid: Optional[Monoid] = None) -> KeyedVector:
    inner: VectorSemiring = p.ring  # type: ignore[assignment]
    if monoid is None and p.monoid is not None and inner.monoid is not None:
        monoid = pair_monoid(p.monoid, inner.monoid)
    return KeyedVector(
        (((a, x), c) for a, row in p.items() for x, c in row.items()),
        inner.ring,
        monoid,
    )


# -- free semimodule functor / applicative / monad -----------------------------


def vmap(h: Callable, p: KeyedVector, monoid: Optional[Monoid] = None) -> KeyedVector:
    """``fmap``: weights of keys with the same image are added."""
    return KeyedVector(((h(k), v) for k, v in p.items()), p.ring, monoid)


def vpure(key, ring: Semiring = NAT, monoid: Optional[Monoid] = None) -> KeyedVector:
    return KeyedVector.singleton(key, ring.one, ring, monoid)


def vlift2(h: Callable, p: KeyedVector, q: KeyedVector, monoid: Optional[Monoid] = None):
    """``liftA2``: ``sum(h(a, b) |-> p[a] * q[b])``."""
    ring = p.ring
    return KeyedVector(
        ((h(a, b), ring.mul(x, y)) for a, x in p.items() for b, y in q.items()),
        ring,
        monoid,
    )


def vbind(p: KeyedVector, h: Callable[[Any], KeyedVector]) -> KeyedVector:
    """Free-semimodule monad bind: ``sum(p[a] . h(a) for a in p)``."""
    ring = p.ring
    acc: Optional[KeyedVector] = None
    for a, w in p.items():
        term = h(a).scale(w)
        acc = term if acc is None else acc + term
    return acc if acc is not None else KeyedVector.zero(ring, None)


class SetSemiring(Semiring):
    """Subsets of a finite universe: union and intersection."""

    def __init__(self, universe: Iterable):
        self.zero = frozenset()
        self.one = frozenset(universe)
        self.name = "set"

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return a & b


def preimage(h: Callable, domain: Iterable) -> KeyedVector:
    """Fibers of ``h`` over a finite domain, as a vector of sets."""
    dom = list(domain)
    sets = SetSemiring(dom)
    return KeyedVector(((h(a), frozenset([a])) for a in dom), sets, None)


# -- function-backed monoid semiring (the oracle) -----------------------------


class SplitsSemiring(Semiring):
    """Functions ``key -> scalar`` with convolution computed by splitting.

    This is the direct definition of the monoid semiring: no data
    structure, just ``(f * g)(w) = sum(f(u) * g(v) for u, v in splits(w))``.
    Each function value is memoized per key.  Closure uses the affine
    solution ``star(f)(w) = star(f(e)) * ([w == e] + sum over proper
    prefixes u of f(u) * star(f)(v))``.
    """

    def __init__(self, ring: Semiring, monoid: Monoid = WORD):
        self.ring = ring
        self.monoid = monoid
        self.name = f"splits[{ring.name}]"
        e = monoid.identity
        self.zero = _memo(lambda w: ring.zero)
        self.one = _memo(lambda w: ring.one if w == e else ring.zero)

    def add(self, f, g):
        ring = self.ring
        return _memo(lambda w: ring.add(f(w), g(w)))

    def mul(self, f, g):
        ring, monoid = self.ring, self.monoid
        return _memo(lambda w: ring.sum(ring.mul(f(u), g(v)) for u, v in monoid.splits(w)))

    def star(self, f):
        ring, e = self.ring, self.monoid.identity
        splits_of = self.monoid.splits

        @lru_cache(maxsize=None)
        def q(w):
            s = ring.star(f(e))
            if w == e:
                return s
            acc = ring.sum(ring.mul(f(u), q(v)) for u, v in splits_of(w) if u != e)
            return ring.mul(s, acc)

        return q

    def scale(self, s, f):
        ring = self.ring
        return _memo(lambda w: ring.mul(s, f(w)))

    def is_zero(self, f):
        return f is self.zero

    def is_one(self, f):
        return f is self.one

    def single(self, key):
        ring = self.ring
        return _memo(lambda w: ring.one if w == key else ring.zero)

    def value(self, b):
        ring, e = self.ring, self.monoid.identity
        return _memo(lambda w: b if w == e else ring.zero)


def _memo(f):
    return lru_cache(maxsize=None)(f)


# -- serialization -------------------------------------------------------------


def format_weight(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def format_key(k) -> str:
    if isinstance(k, tuple):
        return "(" + ",".join(format_key(x) for x in k) + ")"
    return str(k)


def dumps(p: KeyedVector) -> str:
    """Sorted ``key<TAB>weight`` lines."""
    return "".join(f"{format_key(k)}\t{format_weight(v)}\n" for k, v in p.items())
