import random
import threading

import pytest
from hypothesis import given, strategies as st

from semiconv.algebra import BOOL, NAT, REAL, DomainError, UnproductiveRecursion
from semiconv.fixtures import is_dyck, random_regexp, truncated_denotation
from semiconv.keyed import SplitsSemiring
from semiconv.regexp import (
    Char, Defer, Prod, Star, Sum, Value, alphabet, at_eps, char, deriv, derivative, fix,
    index_word, mk_examples, one, reinterpret, scale, single, smart_add, smart_mul, value, zero,
)
from semiconv.trie import TrieSemiring, t_index, words

EX = mk_examples(NAT)
seeds = st.integers(0, 2**32 - 1)


def expr(seed, depth=3):
    return random_regexp(random.Random(seed), depth)


# -- at_eps / deriv basics --------------------------------------------------------------


def test_at_eps_value_and_char():
    assert at_eps(value(7)) == 7
    assert at_eps(char("a")) == 0


def test_at_eps_anbn():
    assert at_eps(EX["anbn"]) == 1


def test_deriv_char():
    d = deriv(char("a"))
    assert list(d) == ["a"] and d["a"] == Value(NAT, 1)


def test_deriv_value_empty():
    assert deriv(value(3)) == {}


def test_deriv_star_is_star():
    s = char("a").star()
    d = derivative(s, "a")
    for w in words("ab", 6):
        assert index_word(d, w) == index_word(s, w)


def test_absent_symbol_derivative_is_zero():
    assert derivative(char("a"), "z") == zero()


# -- index_word examples -------------------------------------------------------------------


def test_pickles():
    e = single("pickles") + single("pickled")
    assert e["pickled"] == 1
    assert e["pickle"] == 0


def test_star_a_star_a_counts_101():
    sa = single("a").star()
    assert index_word(sa * sa, "a" * 100) == 101


def test_dyck_unbalanced():
    assert EX["dyck"]["]["] == 0


def test_examples_table():
    assert EX["anbn"]["aabb"] == 1
    assert EX["dyck"]["[[]]"] == 1
    assert EX["fishy"]["catfishsticks"] == 1
    assert EX["fishy"]["catfsh"] == 0
    assert set(EX) == {"a", "b", "atoz", "fishy", "anbn", "dyck"}


def test_anbn_grid():
    anbn = EX["anbn"]
    for n in range(11):
        for m in range(11):
            assert anbn["a" * n + "b" * m] == (1 if n == m else 0)


def test_dyck_exhaustive_to_10():
    dyck = EX["dyck"]
    for w in words("[]", 10):
        assert dyck[w] == (1 if is_dyck(w) else 0)


def test_weights_multiply():
    e = scale(3, single("ab")) * scale(2, char("c"))
    assert e["abc"] == 6


def test_real_star():
    er = Star(REAL, Prod(REAL, Value(REAL, 0.5), Char(REAL, "a")))
    assert REAL.eq(index_word(er, "aaa"), 0.125)
    with pytest.raises(DomainError):
        at_eps(Star(REAL, Value(REAL, 2.0)))


# -- smart constructors ----------------------------------------------------------------------


def test_smart_add_zero():
    q = char("q")
    assert smart_add(zero(), q) is q
    assert smart_add(q, zero()) is q


def test_smart_mul_one_and_zero_on_left():
    q = char("q")
    assert smart_mul(one(), q) is q
    assert smart_mul(zero(), q) == zero()


def test_smart_mul_right_not_inspected():
    p = char("p")
    e = smart_mul(p, zero())
    assert isinstance(e, Prod) and e.right == zero()


def test_smart_mul_does_not_force_right_defer():
    d = Defer(NAT, "never")  # no body: forcing would raise NameError
    e = char("a") * d
    assert isinstance(e, Prod)


@given(seeds, st.text(alphabet="ab", max_size=5))
def test_smart_matches_raw(seed, w):
    rng = random.Random(seed)
    p, q = random_regexp(rng, 2), random_regexp(rng, 2)
    assert index_word(p + q, w) == index_word(Sum(NAT, p, q), w)
    assert index_word(p * q, w) == index_word(Prod(NAT, p, q), w)


# -- algebraic properties of at_eps and deriv -------------------------------------------------


@given(seeds, seeds, st.integers(0, 4))
def test_at_eps_homomorphism(s1, s2, k):
    p, q = expr(s1), expr(s2)
    assert at_eps(p + q) == at_eps(p) + at_eps(q)
    assert at_eps(p * q) == at_eps(p) * at_eps(q)
    assert at_eps(scale(k, p)) == k * at_eps(p)
    if at_eps(p) == 0:
        assert at_eps(p.star()) == NAT.star(at_eps(p))


@given(seeds, seeds)
def test_deriv_product_rule(s1, s2):
    p, q = expr(s1), expr(s2)
    for c in "ab":
        lhs = derivative(Prod(NAT, p, q), c)
        rhs = scale(at_eps(p), derivative(q, c)) + derivative(p, c) * q
        for w in words("ab", 4):
            assert index_word(lhs, w) == index_word(rhs, w)


@given(seeds)
def test_deriv_star_rule(s):
    p = expr(s)
    if at_eps(p) != 0:
        p = char("a") * p
    for c in "ab":
        lhs = derivative(Star(NAT, p), c)
        rhs = scale(NAT.star(at_eps(p)), derivative(p, c)) * Star(NAT, p)
        for w in words("ab", 4):
            assert index_word(lhs, w) == index_word(rhs, w)


@given(seeds)
def test_matches_truncated_vector_denotation(seed):
    e = expr(seed, 4)
    v = truncated_denotation(e, 6)
    assert all(index_word(e, w) == v[w] for w in words("ab", 6))


@pytest.mark.parametrize(
    "name,alpha", [("a", "ab"), ("b", "ab"), ("fishy", "fisha"), ("anbn", "ab"), ("dyck", "[]")]
)
def test_count_positive_iff_bool(name, alpha):
    nat, boo = mk_examples(NAT)[name], mk_examples(BOOL)[name]
    for w in words(alpha, 5):
        assert (index_word(nat, w) > 0) == index_word(boo, w)


# -- Defer --------------------------------------------------------------------------------------


def test_defer_body_forced_once():
    calls = []

    def body():
        calls.append(1)
        return char("x")

    d = Defer(NAT, "x", body)
    for _ in range(5):
        index_word(d, "x")
    assert len(calls) == 1


def test_left_recursion_raises():
    bad = fix("bad", lambda s: s * char("a") + one())
    with pytest.raises(UnproductiveRecursion, match="bad"):
        index_word(bad, "a")


def test_self_loop_raises():
    loop = fix("loop", lambda s: s)
    with pytest.raises(UnproductiveRecursion):
        at_eps(loop)


def test_undefined_defer():
    with pytest.raises(NameError):
        at_eps(Defer(NAT, "ghost"))


def test_defer_threads_agree():
    anbn = mk_examples(NAT)["anbn"]
    out = []
    ws = ["a" * n + "b" * n for n in range(15)]

    def work():
        out.append([index_word(anbn, w) for w in ws])

    ts = [threading.Thread(target=work) for _ in range(6)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert out == [[1] * 15] * 6


def test_defer_equality_is_identity():
    d1, d2 = Defer(NAT, "x", lambda: one()), Defer(NAT, "x", lambda: one())
    assert d1 != d2 and d1 == d1


# -- reinterpretation ------------------------------------------------------------------------------


def test_reinterpret_char_into_trie():
    t = reinterpret(char("a"), TrieSemiring(NAT))
    assert t_index(t, "a") == 1


def test_reinterpret_zero():
    ts = TrieSemiring(NAT)
    assert reinterpret(zero(), ts).is_zero()
    assert reinterpret(zero(), SplitsSemiring(NAT))("") == 0


def test_reinterpret_fishy_random_words():
    rng = random.Random(7)
    fishy = EX["fishy"]
    t = reinterpret(fishy, TrieSemiring(NAT))
    for _ in range(50):
        n = rng.randint(0, 10)
        w = "".join(rng.choice("fishab") for _ in range(n))
        assert t_index(t, w) == index_word(fishy, w)


def test_reinterpret_recursive_needs_delay():
    with pytest.raises(UnproductiveRecursion):
        reinterpret(EX["anbn"], SplitsSemiring(NAT))


def test_alphabet():
    assert alphabet(EX["dyck"]) == {"[", "]"}
    assert alphabet(EX["fishy"]) == set("abcdefghijklmnopqrstuvwxyz")
