"""Lazy list tries: weighted languages that memoize themselves.

A :class:`Trie` is a weight for the empty word plus a map from symbols to
child tries (``b :< children``).  Indexing walks one child per symbol.
Children are usually *delayed*: a child is computed the first time it is
visited and kept afterwards, so repeated queries cost only the walk.

The semiring operations follow the list-trie equations directly::

    (a :< dp) + (b :< dq) = a + b :< dp + dq
    (a :< dp) * q         = a . q + (0 :< {c: dp[c] * q})
    star(a :< dp)         = q  where  q = star(a) . (1 :< {c: dp[c] * q})

``star`` ties a knot: the children of ``q`` refer back to ``q``.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Callable, Iterable, Optional

from .algebra import NAT, Semiring, UnproductiveRecursion

_PENDING = object()

_forced_lock = threading.Lock()
_forced = 0


def cells_forced() -> int:
    """Number of delayed tries evaluated so far, process wide."""
    return _forced


def _count_force() -> None:
    global _forced
    with _forced_lock:
        _forced += 1


class Trie:
    """``weight :< children``, possibly not yet evaluated."""

    __slots__ = ("ring", "_weight", "_children", "_thunk", "_lock", "_busy")

    def __init__(self, ring: Semiring, weight, children: Optional[dict] = None):
        self.ring = ring
        self._weight = weight
        self._children = children if children is not None else {}
        self._thunk = None
        self._lock = None
        self._busy = False

    @classmethod
    def delay(cls, ring: Semiring, thunk: Callable[[], "Trie"]) -> "Trie":
        t = cls.__new__(cls)
        t.ring = ring
        t._weight = _PENDING
        t._children = None
        t._thunk = thunk
        t._lock = threading.RLock()
        t._busy = False
        return t

    @property
    def forced(self) -> bool:
        return self._thunk is None

    def force(self) -> "Trie":
        if self._thunk is None:
            return self
        with self._lock:
            if self._thunk is None:
                return self
            if self._busy:
                raise UnproductiveRecursion("unproductive recursion: a trie cell needs its own value to compute it")
            self._busy = True
            try:
                t = self._thunk().force()
            finally:
                self._busy = False
            self._weight = t._weight
            self._children = t._children
            self._thunk = None
            _count_force()
            return self

    @property
    def weight(self):
        if self._thunk is not None:
            self.force()
        return self._weight

    @property
    def children(self) -> dict:
        if self._thunk is not None:
            self.force()
        return self._children

    # -- semiring surface ---------------------------------------------------

    def __add__(self, other: "Trie") -> "Trie":
        return t_add(self, other)

    def __mul__(self, other: "Trie") -> "Trie":
        return t_mul(self, other)

    def star(self) -> "Trie":
        return t_star(self)

    def scale(self, s) -> "Trie":
        return t_scale(s, self)

    def __getitem__(self, word):
        return t_index(self, word)

    def is_zero(self) -> bool:
        # Structural and conservative: only the literal empty trie with weight 0.
        return self.ring.is_zero(self.weight) and not self.children

    def is_one(self) -> bool:
        return self.ring.is_one(self.weight) and not self.children

    def __repr__(self):
        if self._thunk is not None:
            return "Trie(?)"
        return f"Trie({self._weight!r} :< {sorted(self._children)})"


def zero(ring: Semiring = NAT) -> Trie:
    return Trie(ring, ring.zero)


def one(ring: Semiring = NAT) -> Trie:
    return Trie(ring, ring.one)


def value(b, ring: Semiring = NAT) -> Trie:
    return Trie(ring, b)


def t_singleton(word: Iterable, b, ring: Semiring = NAT) -> Trie:
    """The trie with weight ``b`` at ``word`` and zero everywhere else."""
    if ring.is_zero(b):
        return zero(ring)
    t = Trie(ring, b)
    for c in reversed(list(word)):
        t = Trie(ring, ring.zero, {c: t})
    return t


def single(word: Iterable, ring: Semiring = NAT) -> Trie:
    return t_singleton(word, ring.one, ring)


def t_index(t: Trie, w: Iterable):
    """Weight of ``w``; forces only the cells on its path."""
    for c in w:
        nxt = t.children.get(c)
        if nxt is None:
            return t.ring.zero
        t = nxt
    return t.weight


def t_add(p: Trie, q: Trie) -> Trie:
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    ring = p.ring
    dp, dq = p.children, q.children
    kids = dict(dp)
    for c, tq in dq.items():
        tp = kids.get(c)
        if tp is None:
            kids[c] = tq
        else:
            kids[c] = Trie.delay(ring, lambda tp=tp, tq=tq: t_add(tp, tq))
    return Trie(ring, ring.add(p.weight, q.weight), kids)


def t_scale(s, p: Trie) -> Trie:
    """Every weight multiplied on the left by ``s``."""
    ring = p.ring
    if ring.is_zero(s):
        return zero(ring)
    if ring.is_one(s):
        return p
    return t_map(lambda b: ring.mul(s, b), p)


def t_map(f: Callable, p: Trie, ring: Optional[Semiring] = None) -> Trie:
    """Apply ``f`` to every weight, lazily."""
    ring = ring or p.ring
    kids = {c: Trie.delay(ring, lambda t=t: t_map(f, t, ring)) for c, t in p.children.items()}
    return Trie(ring, f(p.weight), kids)


def t_mul(p: Trie, q: Trie) -> Trie:
    ring = p.ring
    if p.is_zero():
        return p
    if p.is_one():
        return q
    a = p.weight
    tail = Trie(
        ring,
        ring.zero,
        {c: Trie.delay(ring, lambda d=d: t_mul(d, q)) for c, d in p.children.items()},
    )
    return t_add(t_scale(a, q), tail)


def t_star(p: Trie) -> Trie:
    ring = p.ring
    s = ring.star(p.weight)
    q = Trie(ring, s, {})
    if ring.is_one(s):
        kids = {c: Trie.delay(ring, lambda d=d: t_mul(d, q)) for c, d in p.children.items()}
    else:
        kids = {
            c: Trie.delay(ring, lambda d=d: t_scale(s, t_mul(d, q)))
            for c, d in p.children.items()
        }
    q._children = kids
    return q


# -- comonad ---------------------------------------------------------------------


def coreturn(t: Trie):
    return t.weight


def cojoin(t: Trie) -> Trie:
    """The trie of residuals: the weight at path ``u`` is the subtrie at ``u``."""
    inner = TrieSemiring(t.ring)
    kids = {c: Trie.delay(inner, lambda d=d: cojoin(d)) for c, d in t.children.items()}
    return Trie(inner, t, kids)


def subtrie(t: Trie, u: Iterable) -> Trie:
    for c in u:
        nxt = t.children.get(c)
        if nxt is None:
            return zero(t.ring)
        t = nxt
    return t


# -- as a semiring structure -------------------------------------------------------


class TrieSemiring(Semiring):
    """Tries over a scalar ring, for use as a reinterpretation target."""

    def __init__(self, ring: Semiring = NAT):
        self.ring = ring
        self.name = f"trie[{ring.name}]"
        self.zero = zero(ring)
        self.one = one(ring)

    def add(self, a, b):
        return t_add(a, b)

    def mul(self, a, b):
        return t_mul(a, b)

    def star(self, a):
        return t_star(a)

    def scale(self, s, a):
        return t_scale(s, a)

    def is_zero(self, a):
        return a.is_zero()

    def is_one(self, a):
        return a.is_one()

    def single(self, word):
        return single(word, self.ring)

    def value(self, b):
        return value(b, self.ring)

    def delay(self, thunk):
        return Trie.delay(self.ring, thunk)

    def eq_upto(self, a: Trie, b: Trie, alphabet: str, max_len: int) -> bool:
        return bounded_equal(a, b, alphabet, max_len)


def trie_semiring(ring: Semiring = NAT) -> TrieSemiring:
    return TrieSemiring(ring)


def words(alphabet: Iterable, max_len: int):
    """All words over ``alphabet`` up to ``max_len``, shortest first."""
    alphabet = list(alphabet)
    layer = [""]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + c for w in layer for c in alphabet]


def bounded_equal(a: Trie, b: Trie, alphabet: Iterable, max_len: int) -> bool:
    """Extensional equality restricted to words of length ``<= max_len``."""
    ring = a.ring
    return all(ring.eq(t_index(a, w), t_index(b, w)) for w in words(alphabet, max_len))


def dump(t: Trie, depth: int) -> str:
    """Breadth-first ``prefix<TAB>weight`` listing; unevaluated cells show ``?``."""
    lines = []
    queue = deque([("", t)])
    while queue:
        prefix, node = queue.popleft()
        if not node.forced:
            lines.append(f"{prefix}\t?")
            continue
        lines.append(f"{prefix}\t{node._weight}")
        if len(prefix) < depth:
            for c in sorted(node._children):
                queue.append((prefix + c, node._children[c]))
    return "\n".join(lines) + "\n"
