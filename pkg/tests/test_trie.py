import random
import threading

import pytest
from hypothesis import given, strategies as st

from semiconv.algebra import NAT, UnproductiveRecursion
from semiconv.fixtures import random_regexp
from semiconv.keyed import KeyedVector, convolve_by_splits
from semiconv.regexp import index_word, mk_examples, reinterpret
from semiconv.trie import (
    Trie, TrieSemiring, bounded_equal, cells_forced, cojoin, coreturn, dump, one, single,
    subtrie, t_add, t_index, t_mul, t_scale, t_singleton, t_star, words, zero,
)

TS = TrieSemiring(NAT)
seeds = st.integers(0, 2**32 - 1)


def rtrie(seed, depth=3):
    return reinterpret(random_regexp(random.Random(seed), depth), TS)


def finite_trie(seed):
    """A finite random language as both a vector and a trie."""
    rng = random.Random(seed)
    entries = {
        "".join(rng.choice("ab") for _ in range(rng.randint(0, 4))): rng.randint(1, 3)
        for _ in range(rng.randint(0, 5))
    }
    t = zero()
    for w, b in entries.items():
        t = t + t_singleton(w, b)
    return KeyedVector(entries), t


# -- indexing -------------------------------------------------------------------------


def test_zero_trie():
    assert all(t_index(zero(), w) == 0 for w in ["", "a", "xyz"])


def test_one_trie():
    assert t_index(one(), "") == 1
    assert t_index(one(), "x") == 0


def test_singleton_index():
    assert t_index(t_singleton("ab", 5), "ab") == 5
    assert t_index(t_singleton("ab", 5), "a") == 0


def test_singleton_empty_word():
    t = t_singleton("", 4)
    assert t.weight == 4 and t.children == {}


# -- add / mul / star / scale --------------------------------------------------------


@given(seeds)
def test_add_zero(seed):
    p = rtrie(seed)
    assert bounded_equal(t_add(p, zero()), p, "ab", 6)


def test_add_singles():
    t = t_add(single("a"), single("b"))
    assert (t["a"], t["b"], t["ab"]) == (1, 1, 0)


@given(seeds, seeds, st.text(alphabet="ab", max_size=6))
def test_add_pointwise(s1, s2, w):
    p, q = rtrie(s1), rtrie(s2)
    assert t_index(p + q, w) == t_index(p, w) + t_index(q, w)


def test_mul_singles():
    assert t_index(t_mul(single("a"), single("b")), "ab") == 1


@given(seeds, seeds)
def test_mul_matches_splits_oracle(s1, s2):
    (vp, p), (vq, q) = finite_trie(s1), finite_trie(s2)
    pq = t_mul(p, q)
    assert all(t_index(pq, w) == convolve_by_splits(vp, vq, w) for w in words("ab", 8))


@given(seeds)
def test_mul_one(seed):
    q = rtrie(seed)
    assert bounded_equal(t_mul(one(), q), q, "ab", 6)


def test_star_single():
    assert t_index(t_star(single("a")), "aaa") == 1


def test_star_zero_is_one():
    assert bounded_equal(t_star(zero()), one(), "ab", 6)


def test_star_star_a_101():
    sa = t_star(single("a"))
    assert t_index(t_mul(sa, sa), "a" * 100) == 101


def test_star_ties_a_knot():
    s = t_star(single("a"))
    assert s.children["a"].force().children["a"] is not None
    assert t_index(s, "a" * 500) == 1


def test_scale_zero_is_zero():
    assert t_scale(0, t_singleton("a", 3)).is_zero()


def test_scale_pointwise():
    assert t_index(t_scale(2, t_singleton("a", 3)), "a") == 6


def test_scale_one_is_same():
    p = single("ab")
    assert t_scale(1, p) is p


# -- laziness and memoization -------------------------------------------------------------


def test_repeat_query_forces_nothing_new():
    fishy = reinterpret(mk_examples(NAT)["fishy"], TS)
    w = "a" * 48 + "fish" + "a" * 48
    assert t_index(fishy, w) == 1
    before = cells_forced()
    assert t_index(fishy, w) == 1
    assert cells_forced() == before


def test_construction_is_lazy():
    before = cells_forced()
    sa = t_star(single("a"))
    t_mul(sa, sa)
    assert cells_forced() == before


def test_unproductive_trie_raises():
    t = Trie.delay(NAT, lambda: t_add(t, single("a")))
    with pytest.raises(UnproductiveRecursion):
        t.force()


def test_concurrent_forcing():
    anbn = reinterpret(mk_examples(NAT)["anbn"], TS)
    res = []

    def work():
        res.append([t_index(anbn, "a" * n + "b" * n) for n in range(30)])

    ts = [threading.Thread(target=work) for _ in range(8)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert res == [[1] * 30] * 8


# -- cross-engine ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["a", "b", "atoz", "fishy", "anbn", "dyck"])
def test_cross_engine_examples(name):
    e = mk_examples(NAT)[name]
    t = reinterpret(e, TS)
    rng = random.Random(name)
    alpha = {"dyck": "[]", "fishy": "fishab", "atoz": "abz"}.get(name, "ab")
    for _ in range(200):
        w = "".join(rng.choice(alpha) for _ in range(rng.randint(0, 12)))
        assert t_index(t, w) == index_word(e, w)


# -- comonad ----------------------------------------------------------------------------------


def test_coreturn_one():
    assert coreturn(one()) == 1


def test_cojoin_at_empty_is_self():
    t = single("ab")
    assert cojoin(t).weight is t


@given(seeds, st.text(alphabet="ab", max_size=4), st.text(alphabet="ab", max_size=4))
def test_cojoin_residuals(seed, u, v):
    t = rtrie(seed)
    res = t_index(cojoin(t), u)
    assert t_index(res, v) == t_index(t, u + v)
    assert t_index(subtrie(t, u), v) == t_index(t, u + v)


@given(seeds)
def test_comonad_laws(seed):
    t = rtrie(seed)
    cj = cojoin(t)
    assert coreturn(cj) is t
    for u in words("ab", 3):
        # extracting at every position of the residual trie gives back t
        assert coreturn(t_index(cj, u)) == t_index(t, u)
        # and so does the residual trie of each residual
        assert t_index(coreturn(subtrie(cj, u)), "") == t_index(t, u)


# -- debug dump ---------------------------------------------------------------------------------


def test_dump_marks_unforced():
    t = t_star(single("a"))
    assert dump(t, 2) == "\t1\na\t?\n"
    t_index(t, "a")
    assert dump(t, 1).splitlines()[:2] == ["\t1", "a\t1"]
