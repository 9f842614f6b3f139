"""Semiring-weighted regular expressions matched by derivatives.

An expression denotes a function from words to weights.  Matching a word
differentiates the expression one symbol at a time and reads off the
empty-word weight of what is left::

    e ! w = at_eps(deriv(...deriv(deriv(e)[w0])[w1]...)[wn])

Derivatives are returned as ordinary dicts from symbol to expression; a
missing symbol means the zero expression.

Recursive grammars are written with :func:`fix`, which builds a
:class:`Defer` node.  Deferred bodies are forced once; their empty-word
weight is cached.  Re-entering a node that is still being forced raises
:class:`~semiconv.algebra.UnproductiveRecursion`.
"""

from __future__ import annotations

import threading
from typing import Any, Callable, Optional

from .algebra import NAT, Semiring, UnproductiveRecursion

DerivMap = dict  # symbol -> RegExp


class RegExp:
    __slots__ = ("ring",)

    # Operators build through the smart constructors.
    def __add__(self, other: "RegExp") -> "RegExp":
        return smart_add(self, other)

    def __mul__(self, other: "RegExp") -> "RegExp":
        return smart_mul(self, other)

    def star(self) -> "RegExp":
        return Star(self.ring, self)

    def scale(self, s) -> "RegExp":
        return scale(s, self)

    def __getitem__(self, word):
        return index_word(self, word)

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, RegExp):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))


class Char(RegExp):
    __slots__ = ("sym",)

    def __init__(self, ring: Semiring, sym: str):
        self.ring = ring
        self.sym = sym

    def _eps(self):
        return self.ring.zero

    def _deriv(self) -> DerivMap:
        return {self.sym: Value(self.ring, self.ring.one)}

    def _key(self):
        return (self.sym,)

    def __repr__(self):
        return f"Char({self.sym!r})"


class Value(RegExp):
    __slots__ = ("value",)

    def __init__(self, ring: Semiring, value):
        self.ring = ring
        self.value = value

    def _eps(self):
        return self.value

    def _deriv(self) -> DerivMap:
        return {}

    def _key(self):
        return (self.value,)

    def __repr__(self):
        return f"Value({self.value!r})"


class Sum(RegExp):
    __slots__ = ("left", "right")

    def __init__(self, ring: Semiring, left: RegExp, right: RegExp):
        self.ring = ring
        self.left = left
        self.right = right

    def _eps(self):
        return self.ring.add(self.left._eps(), self.right._eps())

    def _deriv(self) -> DerivMap:
        return _merge(self.left._deriv(), self.right._deriv())

    def _key(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"Sum({self.left!r}, {self.right!r})"


class Prod(RegExp):
    __slots__ = ("left", "right")

    def __init__(self, ring: Semiring, left: RegExp, right: RegExp):
        self.ring = ring
        self.left = left
        self.right = right

    def _eps(self):
        ring = self.ring
        a = self.left._eps()
        # Zero annihilates: the right factor is not examined.  This is what
        # lets right-recursive grammars such as 1 + a * anbn * b terminate.
        if ring.is_zero(a):
            return ring.zero
        return ring.mul(a, self.right._eps())

    def _deriv(self) -> DerivMap:
        ring = self.ring
        p, q = self.left, self.right
        a = p._eps()
        if ring.is_zero(a):
            d: DerivMap = {}
        elif ring.is_one(a):
            d = q._deriv()
        else:
            d = {c: scale(a, dq) for c, dq in q._deriv().items()}
        return _merge(d, {c: smart_mul(dp, q) for c, dp in p._deriv().items()})

    def _key(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"Prod({self.left!r}, {self.right!r})"


class Star(RegExp):
    __slots__ = ("inner",)

    def __init__(self, ring: Semiring, inner: RegExp):
        self.ring = ring
        self.inner = inner

    def _eps(self):
        return self.ring.star(self.inner._eps())

    def _deriv(self) -> DerivMap:
        s = self.ring.star(self.inner._eps())
        return {c: smart_mul(scale(s, d), self) for c, d in self.inner._deriv().items()}

    def _key(self):
        return (self.inner,)

    def __repr__(self):
        return f"Star({self.inner!r})"


class Defer(RegExp):
    """A named, lazily built subexpression; compares by identity."""

    __slots__ = ("name", "_thunk", "_body", "_eps_value", "_has_eps", "_busy", "_lock")

    def __init__(self, ring: Semiring, name: str, thunk: Optional[Callable[[], RegExp]] = None):
        self.ring = ring
        self.name = name
        self._thunk = thunk
        self._body: Optional[RegExp] = None
        self._eps_value: Any = None
        self._has_eps = False
        self._busy: set = set()
        self._lock = threading.RLock()

    def define(self, thunk: Callable[[], RegExp]) -> "Defer":
        self._thunk = thunk
        return self

    @property
    def body(self) -> RegExp:
        body = self._body
        if body is not None:
            return body
        with self._lock:
            if self._body is None:
                if self._thunk is None:
                    raise NameError(f"{self.name} is declared but never defined")
                self._guard("body", self._thunk)
            return self._body

    def _guard(self, what: str, fn):
        if what in self._busy:
            raise UnproductiveRecursion(
                f"unproductive recursion: {self.name} needs its own {what} to compute it"
            )
        self._busy.add(what)
        try:
            result = fn()
        finally:
            self._busy.discard(what)
        if what == "body":
            self._body = result
        return result

    def _eps(self):
        if self._has_eps:
            return self._eps_value
        body = self.body
        with self._lock:
            if not self._has_eps:
                self._eps_value = self._guard("at_eps", body._eps)
                self._has_eps = True
            return self._eps_value

    def _deriv(self) -> DerivMap:
        body = self.body
        with self._lock:
            return self._guard("deriv", body._deriv)

    def _key(self):
        return (id(self),)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"Defer({self.name})"


def _merge(p: DerivMap, q: DerivMap) -> DerivMap:
    if not p:
        return q
    if not q:
        return p
    out = dict(p)
    for c, e in q.items():
        out[c] = smart_add(out[c], e) if c in out else e
    return out


# -- constructors ---------------------------------------------------------------


def _is_zero(e: RegExp) -> bool:
    return type(e) is Value and e.ring.is_zero(e.value)


def _is_one(e: RegExp) -> bool:
    return type(e) is Value and e.ring.is_one(e.value)


def smart_add(p: RegExp, q: RegExp) -> RegExp:
    if _is_zero(p):
        return q
    if _is_zero(q):
        return p
    return Sum(p.ring, p, q)


def smart_mul(p: RegExp, q: RegExp) -> RegExp:
    # Only the left factor is inspected; looking at q would force deferred
    # right-recursive definitions.
    if _is_zero(p):
        return p
    if _is_one(p):
        return q
    return Prod(p.ring, p, q)


def scale(s, e: RegExp) -> RegExp:
    """Left action ``s . e``, as ``Value(s) * e`` with the zero/one shortcuts."""
    ring = e.ring
    if ring.is_zero(s):
        return Value(ring, ring.zero)
    if ring.is_one(s):
        return e
    return Prod(ring, Value(ring, s), e)


def zero(ring: Semiring = NAT) -> RegExp:
    return Value(ring, ring.zero)


def one(ring: Semiring = NAT) -> RegExp:
    return Value(ring, ring.one)


def value(b, ring: Semiring = NAT) -> RegExp:
    return Value(ring, b)


def char(c: str, ring: Semiring = NAT) -> RegExp:
    return Char(ring, c)


def single(word: str, ring: Semiring = NAT, weight=None) -> RegExp:
    """The language containing just ``word`` (with the given weight)."""
    w = ring.one if weight is None else weight
    if not word:
        return Value(ring, w)
    e: RegExp = Char(ring, word[-1])
    for c in reversed(word[:-1]):
        e = Prod(ring, Char(ring, c), e)
    return scale(w, e)


def fix(name: str, f: Callable[[Defer], RegExp], ring: Semiring = NAT) -> Defer:
    """Recursive definition: ``fix("x", lambda x: one + a * x * b)``."""
    d = Defer(ring, name)
    return d.define(lambda: f(d))


# -- matching -------------------------------------------------------------------


def at_eps(e: RegExp):
    """Weight of the empty word."""
    return e._eps()


def deriv(e: RegExp) -> DerivMap:
    """All nonzero single-symbol derivatives of ``e``."""
    return e._deriv()


def derivative(e: RegExp, c: str) -> RegExp:
    d = e._deriv().get(c)
    return d if d is not None else Value(e.ring, e.ring.zero)


def index_word(e: RegExp, w) -> Any:
    """Weight of ``w``: fold single-symbol derivatives, then take ``at_eps``."""
    ring = e.ring
    for c in w:
        d = e._deriv().get(c)
        if d is None:
            return ring.zero
        e = d
    return e._eps()


def alphabet(e: RegExp) -> set:
    """Symbols occurring in ``e`` (forcing deferred bodies)."""
    seen: set = set()
    out: set = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if id(n) in seen:
            continue
        seen.add(id(n))
        if isinstance(n, Char):
            out.add(n.sym)
        elif isinstance(n, (Sum, Prod)):
            stack.extend((n.left, n.right))
        elif isinstance(n, Star):
            stack.append(n.inner)
        elif isinstance(n, Defer):
            stack.append(n.body)
    return out


def reinterpret(e: RegExp, target) -> Any:
    """Homomorphic image of ``e`` in another star semiring.

    ``target`` supplies ``zero/one/add/mul/star`` plus ``single(word)`` and
    ``value(b)``.  If it also has ``delay(thunk)``, deferred nodes map to
    delayed target values, so recursive grammars survive; otherwise their
    bodies are interpreted eagerly (and recursion through them fails).
    Shared subexpressions map to shared target values.
    """
    memo: dict = {}
    busy: set = set()
    delay = getattr(target, "delay", None)

    def go(n: RegExp):
        key = id(n)
        hit = memo.get(key)
        if hit is not None:
            return hit[1]
        t = type(n)
        if t is Char:
            r = target.single(n.sym)
        elif t is Value:
            r = target.value(n.value)
        elif t is Sum:
            r = target.add(go(n.left), go(n.right))
        elif t is Prod:
            r = target.mul(go(n.left), go(n.right))
        elif t is Star:
            r = target.star(go(n.inner))
        elif t is Defer:
            if delay is not None:
                r = delay(lambda n=n: go(n.body))
            else:
                if key in busy:
                    raise UnproductiveRecursion(f"cannot interpret {n.name} eagerly: it is recursive")
                busy.add(key)
                try:
                    r = go(n.body)
                finally:
                    busy.discard(key)
        else:
            raise TypeError(f"not a regular expression node: {n!r}")
        memo[key] = (n, r)
        return r

    return go(e)


def mk_examples(ring: Semiring = NAT) -> dict[str, RegExp]:
    """The standard example languages: a, b, atoz, fishy, anbn, dyck."""
    a = single("a", ring)
    b = single("b", ring)
    atoz = zero(ring)
    for c in "abcdefghijklmnopqrstuvwxyz":
        atoz = atoz + single(c, ring)
    fishy = atoz.star() * single("fish", ring) * atoz.star()
    anbn = fix("anbn", lambda s: one(ring) + a * s * b, ring)
    dyck = fix("dyck", lambda s: (single("[", ring) * s * single("]", ring)).star(), ring)
    return {"a": a, "b": b, "atoz": atoz, "fishy": fishy, "anbn": anbn, "dyck": dyck}
