"""Quick randomized oracle suites, runnable without pytest.

Every suite takes a seeded :class:`random.Random` and returns
``(passed, failed)`` case counts.  The same seed yields the same cases.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterator

from .algebra import BOOL, INT, NAT, RATIONAL, REAL, Semiring
from .conv import Signal1D, conv1d, dft_check
from .fixtures import (
    fixture,
    is_anbn,
    is_dyck,
    random_regexp,
    splits_denotation,
    trie_denotation,
    truncated_denotation,
)
from .keyed import WORD, KeyedVector
from .poly import Poly1, m_var, ode_series, p_eval, s_derivative
from .regexp import index_word
from .trie import words

DEFAULT_SEED = 20190801
Suite = Callable[[random.Random], tuple[int, int]]


def _tally(checks: Iterator[bool]) -> tuple[int, int]:
    ok = bad = 0
    for c in checks:
        if c:
            ok += 1
        else:
            bad += 1
    return ok, bad


def _scalar(rng: random.Random, ring: Semiring):
    if ring is BOOL:
        return rng.random() < 0.5
    if ring is REAL:
        return rng.uniform(-2, 2)
    if ring is RATIONAL:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    if ring is INT:
        return rng.randint(-9, 9)
    return rng.randint(0, 9)


def semiring_laws(rng: random.Random, cases: int = 100) -> tuple[int, int]:
    def checks():
        for ring in (BOOL, NAT, INT, REAL, RATIONAL):
            eq, add, mul = ring.eq, ring.add, ring.mul
            for _ in range(cases):
                a, b, c = (_scalar(rng, ring) for _ in range(3))
                yield eq(add(a, add(b, c)), add(add(a, b), c))
                yield eq(add(a, b), add(b, a))
                yield eq(add(a, ring.zero), a)
                yield eq(mul(a, mul(b, c)), mul(mul(a, b), c))
                yield eq(mul(ring.one, a), a) and eq(mul(a, ring.one), a)
                yield eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))
                yield eq(mul(add(a, b), c), add(mul(a, c), mul(b, c)))
                yield eq(mul(ring.zero, a), ring.zero)

    return _tally(checks())


def _vector(rng: random.Random) -> KeyedVector:
    return KeyedVector(
        {"".join(rng.choice("ab") for _ in range(rng.randrange(3))): rng.randrange(4) for _ in range(rng.randrange(4))},
        NAT,
        WORD,
    )


def vector_laws(rng: random.Random, cases: int = 100) -> tuple[int, int]:
    def checks():
        one = KeyedVector.one(NAT, WORD)
        for _ in range(cases):
            p, q, r = _vector(rng), _vector(rng), _vector(rng)
            yield p + q == q + p
            yield (p * q) * r == p * (q * r)
            yield p * (q + r) == p * q + p * r
            yield one * p == p == p * one

    return _tally(checks())


def splits_oracle(rng: random.Random, cases: int = 60, max_len: int = 5) -> tuple[int, int]:
    def checks():
        for _ in range(cases):
            e = random_regexp(rng)
            f = splits_denotation(e)
            t = trie_denotation(e)
            v = truncated_denotation(e, max_len)
            yield all(index_word(e, w) == f(w) == t(w) == v[w] for w in words("ab", max_len))

    return _tally(checks())


def nonregular(rng: random.Random, max_len: int = 8) -> tuple[int, int]:
    anbn, dyck = fixture("anbn", BOOL), fixture("dyck", BOOL)

    def checks():
        for w in words("ab", max_len):
            yield index_word(anbn, w) == is_anbn(w)
        for w in words("[]", max_len):
            yield index_word(dyck, w) == is_dyck(w)

    return _tally(checks())


def polynomials(rng: random.Random, cases: int = 50) -> tuple[int, int]:
    def rand_poly():
        return Poly1([rng.randint(-9, 9) for _ in range(rng.randrange(7))])

    def checks():
        p = Poly1([3, 1])
        yield str(p ** 3) == "x^3 + 9x^2 + 27x + 27"
        yield p_eval(p ** 5, 17) == p_eval(p, 17) ** 5
        x, y, z = m_var("x"), m_var("y"), m_var("z")
        yield str((x + y + z) ** 2) == "x^2 + 2xy + 2xz + y^2 + 2yz + z^2"
        for _ in range(cases):
            a, b = rand_poly(), rand_poly()
            v = rng.randint(-3, 3)
            yield p_eval(a * b, v) == p_eval(a, v) * p_eval(b, v)
            yield (a * b).to_dense() == a.to_dense() * b.to_dense()

    return _tally(checks())


def series(rng: random.Random, count: int = 16) -> tuple[int, int]:
    def checks():
        s = ode_series()
        sin, cos, exp = s["sin"], s["cos"], s["exp"]
        dsin, dexp = s_derivative(sin), s_derivative(exp)
        sq = sin * sin + cos * cos
        fact = 1
        for n in range(count):
            fact *= max(n, 1)
            yield exp[n] == Fraction(1, fact)
            yield dsin[n] == cos[n] and dexp[n] == exp[n]
            yield sq[n] == (1 if n == 0 else 0)

    return _tally(checks())


def convolution(rng: random.Random, cases: int = 50) -> tuple[int, int]:
    def sig(max_len=16):
        return Signal1D([rng.uniform(-1, 1) for _ in range(rng.randint(1, max_len))], rng.randint(-3, 3))

    def checks():
        for _ in range(cases):
            f, g, h = sig(), sig(), sig()
            yield dft_check(f, g, 32)
            yield conv1d(f, g).close_to(conv1d(g, f))
            yield conv1d(conv1d(f, g), h).close_to(conv1d(f, conv1d(g, h)))

    return _tally(checks())


SUITES: dict[str, Suite] = {
    "semiring-laws": semiring_laws,
    "vector-laws": vector_laws,
    "splits-oracle": splits_oracle,
    "nonregular": nonregular,
    "polynomials": polynomials,
    "series": series,
    "convolution": convolution,
}


def run(seed: int = DEFAULT_SEED, out=None) -> bool:
    """Run every suite, print ``suite<TAB>passed<TAB>failed``; True iff all pass."""
    import sys

    out = out or sys.stdout
    all_ok = True
    out.write("suite\tpassed\tfailed\n")
    for i, (name, suite) in enumerate(SUITES.items()):
        rng = random.Random(f"{seed}:{i}")
        try:
            ok, bad = suite(rng)
        except Exception as exc:  # a crash counts as a failure
            out.write(f"{name}\t0\t1\t{type(exc).__name__}: {exc}\n")
            all_ok = False
            continue
        out.write(f"{name}\t{ok}\t{bad}\n")
        all_ok = all_ok and bad == 0
    return all_ok
