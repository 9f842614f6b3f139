"""Named example languages, their benchmark inputs, and independent oracles."""

from __future__ import annotations

import random
import string
from typing import Callable

from .algebra import NAT, Semiring
from .keyed import SplitsSemiring, TruncatedWordSemiring
from .regexp import Char, Prod, RegExp, Star, Sum, Value, at_eps, mk_examples, reinterpret
from .trie import TrieSemiring, t_index


def _build(ring: Semiring) -> dict[str, RegExp]:
    ex = mk_examples(ring)
    a, b, atoz = ex["a"], ex["b"], ex["atoz"]
    return {
        "a": a,
        "b": b,
        "atoz": atoz,
        "star_a": a.star(),
        "star_atoz": atoz.star(),
        "star_a_star_a": a.star() * a.star(),
        "star_a_star_b": a.star() * b.star(),
        "star_a_b_star_a": a.star() * b * a.star(),
        "fishy": ex["fishy"],
        "anbn": ex["anbn"],
        "dyck": ex["dyck"],
    }


FIXTURE_NAMES = tuple(_build(NAT))
BENCH_FIXTURES = (
    "star_a",
    "star_atoz",
    "star_a_star_a",
    "star_a_star_b",
    "star_a_b_star_a",
    "fishy",
    "anbn",
    "dyck",
)


def fixture(name: str, ring: Semiring = NAT) -> RegExp:
    try:
        return _build(ring)[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None


def canonical_input(name: str, n: int) -> str:
    """A length-``n`` word that ``name`` matches, where one exists."""
    half = n // 2
    if name in ("star_a", "star_a_star_a", "a"):
        return "a" * n
    if name in ("star_atoz", "atoz"):
        letters = string.ascii_lowercase
        return "".join(letters[i % 26] for i in range(n))
    if name == "star_a_star_b":
        return "a" * half + "b" * (n - half)
    if name == "star_a_b_star_a":
        if n == 0:
            return ""
        left = (n - 1) // 2
        return "a" * left + "b" + "a" * (n - 1 - left)
    if name == "fishy":
        if n < 4:
            return "a" * n
        left = (n - 4) // 2
        return "a" * left + "fish" + "a" * (n - 4 - left)
    if name == "anbn":
        return "a" * half + "b" * (n - half)
    if name == "dyck":
        return "[" * half + "]" * (n - half)
    if name == "b":
        return "b" * n
    raise KeyError(f"no canonical input for {name!r}")


# -- membership oracles ------------------------------------------------------


def is_anbn(w: str) -> bool:
    n = len(w) // 2
    return len(w) % 2 == 0 and w == "a" * n + "b" * n


def is_dyck(w: str, open_: str = "[", close: str = "]") -> bool:
    depth = 0
    for c in w:
        if c == open_:
            depth += 1
        elif c == close:
            depth -= 1
            if depth < 0:
                return False
        else:
            return False
    return depth == 0


# -- random expressions --------------------------------------------------------


def random_regexp(rng: random.Random, depth: int = 4, alphabet: str = "ab", ring: Semiring = NAT) -> RegExp:
    """A random Defer-free expression built from raw (unsimplified) nodes.

    Closures are only taken of subexpressions with zero empty-word weight,
    so every expression has a finite denotation over the naturals.
    """
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.6:
            return Char(ring, rng.choice(alphabet))
        return Value(ring, ring.from_int(rng.randrange(3)))
    op = rng.randrange(3)
    left = random_regexp(rng, depth - 1, alphabet, ring)
    if op == 0:
        return Sum(ring, left, random_regexp(rng, depth - 1, alphabet, ring))
    if op == 1:
        return Prod(ring, left, random_regexp(rng, depth - 1, alphabet, ring))
    if not ring.is_zero(at_eps(left)):
        left = Prod(ring, Char(ring, rng.choice(alphabet)), left)
    return Star(ring, left)


def splits_denotation(e: RegExp, ring: Semiring = NAT) -> Callable[[str], object]:
    """Weight function of ``e`` through the function-backed monoid semiring."""
    return reinterpret(e, SplitsSemiring(ring))


def truncated_denotation(e: RegExp, limit: int, ring: Semiring = NAT):
    """Finite map of all weights of words up to ``limit``."""
    return reinterpret(e, TruncatedWordSemiring(ring, limit))


def trie_denotation(e: RegExp, ring: Semiring = NAT) -> Callable[[str], object]:
    t = reinterpret(e, TrieSemiring(ring))
    return lambda w: t_index(t, w)
