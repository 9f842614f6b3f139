import random
import threading
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from semiconv.algebra import INT, NAT, RATIONAL, DomainError, UnproductiveRecursion
from semiconv.keyed import KeyedVector
from semiconv.poly import (
    DensePoly, Poly1, PolyM, Series, dense_mul, dump_series, m_eval, m_var, mono_pow, monomial,
    ode_series, p_eval, p_pow, p_show, parse_poly, s_derivative, s_integral,
)

# Golden coefficients, low index first.
SIN_0_13 = [0, 1, 0, F(-1, 6), 0, F(1, 120), 0, F(-1, 5040), 0, F(1, 362880), 0,
            F(-1, 39916800), 0, F(1, 6227020800)]
COS_0_12 = [1, 0, F(-1, 2), 0, F(1, 24), 0, F(-1, 720), 0, F(1, 40320), 0,
            F(-1, 3628800), 0, F(1, 479001600)]
EXP_0_8 = [1, 1, F(1, 2), F(1, 6), F(1, 24), F(1, 120), F(1, 720), F(1, 5040), F(1, 40320)]
X_PLUS_3_TO_7 = [2187, 5103, 5103, 2835, 945, 189, 21, 1]

coef_lists = st.lists(st.integers(-9, 9), max_size=7)


def x_plus_3():
    return Poly1.x() + Poly1.const(3)


# -- univariate ------------------------------------------------------------------------


def test_render_x_plus_3():
    assert p_show(x_plus_3()) == "x + 3"


def test_cube():
    assert p_show(x_plus_3() ** 3) == "x^3 + 9x^2 + 27x + 27"


def test_seventh_power_coefficients():
    p7 = p_pow(x_plus_3(), 7)
    assert [p7[i] for i in range(8)] == X_PLUS_3_TO_7
    assert p7.degree == 7


def test_pow_zero():
    assert x_plus_3() ** 0 == Poly1.const(1)


def test_eval_power_homomorphism():
    p = x_plus_3()
    assert p_eval(p ** 5, 17) == p_eval(p, 17) ** 5 == 20 ** 5


def test_eval_examples():
    assert p_eval(Poly1(), 5) == 0
    assert p_eval(x_plus_3(), 2) == 5
    assert x_plus_3()(2) == 5


def test_zero_renders_as_0():
    assert p_show(Poly1()) == "0"
    assert p_show(PolyM()) == "0"


def test_negative_and_rational_rendering():
    assert p_show(Poly1([-1, 0, 2])) == "2x^2 - 1"
    assert p_show(Poly1([0, -1])) == "-x"
    assert p_show(Poly1([F(1, 2), F(1)], RATIONAL)) == "x + 1/2"
    assert p_show(Poly1({3: F(-1, 6)}, RATIONAL)) == "-1/6*x^3"


@given(coef_lists, coef_lists, st.integers(-3, 3))
def test_eval_is_homomorphism(a, b, x):
    p, q = Poly1(a), Poly1(b)
    assert p_eval(p * q, x) == p_eval(p, x) * p_eval(q, x)
    assert p_eval(p + q, x) == p_eval(p, x) + p_eval(q, x)


@given(st.lists(st.integers(-9, 9), max_size=9), st.lists(st.integers(-9, 9), max_size=9))
def test_sparse_and_dense_agree(a, b):
    sp = Poly1(a) * Poly1(b)
    dn = DensePoly(a) * DensePoly(b)
    assert [sp[i] for i in range(20)] == [dn[i] for i in range(20)]
    assert (Poly1(a) + Poly1(b)).to_dense() == DensePoly(a) + DensePoly(b)


def test_dense_ragged_add_and_trim():
    assert DensePoly([1, 2, 3]) + DensePoly([1]) == DensePoly([2, 2, 3])
    assert DensePoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert DensePoly([1, -2], INT) + DensePoly([0, 2], INT) == DensePoly([1])


def test_dense_long_multiplication():
    assert dense_mul([1, 1], [1, 1]) == [1, 2, 1]
    assert dense_mul([], [1, 2]) == []


def test_dense_large_degree_no_recursion_limit():
    p = DensePoly([1] * 3000, NAT)
    q = p * DensePoly([1, 1], NAT)
    assert len(q) == 3001 and q[1500] == 2


# -- series -------------------------------------------------------------------------------


@pytest.fixture
def trig():
    return ode_series()


def test_sin_golden(trig):
    assert trig["sin"].coefficients(14) == SIN_0_13


def test_cos_golden(trig):
    assert trig["cos"].coefficients(13) == COS_0_12
    assert trig["cos"][13] == 0


def test_exp_golden(trig):
    assert trig["exp"].coefficients(9) == EXP_0_8
    fact = 1
    for n in range(1, 14):
        fact *= n
        assert trig["exp"][n] == F(1, fact)


def test_derivatives(trig):
    sin, cos, exp = trig["sin"], trig["cos"], trig["exp"]
    dsin, dcos, dexp = s_derivative(sin), s_derivative(cos), s_derivative(exp)
    for n in range(16):
        assert dsin[n] == cos[n]
        assert dcos[n] == -sin[n]
        assert dexp[n] == exp[n]


def test_pythagoras(trig):
    sq = trig["sin"] * trig["sin"] + trig["cos"] * trig["cos"]
    assert sq.coefficients(16) == [1] + [0] * 15


def test_integral_of_one():
    ones = Series(lambda n: F(1))
    s = s_integral(ones)
    assert s.coefficients(5) == [0, 1, F(1, 2), F(1, 3), F(1, 4)]


def test_integral_is_nonstrict():
    pulled = []

    def producer(n):
        pulled.append(n)
        return F(n)

    s = s_integral(Series(producer))
    assert s[0] == 0
    assert pulled == []


def test_derivative_inverts_integral():
    rng = random.Random(3)
    cs = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(25)]
    s = Series.from_coeffs(cs)
    back = s_derivative(s_integral(s))
    assert back.coefficients(21) == s.coefficients(21)


def test_integral_needs_division():
    with pytest.raises(DomainError):
        s_integral(Series.const(1, NAT))


def test_coefficients_computed_once():
    calls = []

    def producer(n):
        calls.append(n)
        return F(n)

    s = Series(producer)
    s.coefficients(10)
    s.coefficients(10)
    s[3]
    assert calls == list(range(10))


def test_unproductive_series():
    s = Series.deferred()
    s.define(s + Series.const(F(1)))
    with pytest.raises(UnproductiveRecursion):
        s[0]


def test_series_thread_safety():
    exp = ode_series()["exp"]
    out = []

    def work():
        out.append(exp.coefficients(40))

    ts = [threading.Thread(target=work) for _ in range(6)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(o == out[0] for o in out)


def test_dump_series(trig):
    assert dump_series(trig["exp"], 4) == "0\t1\n1\t1\n2\t1/2\n3\t1/6\n"


# -- multivariate ---------------------------------------------------------------------------


def xyz():
    return m_var("x") + m_var("y") + m_var("z")


def test_xyz_render():
    assert p_show(xyz()) == "x + y + z"


def test_xyz_squared():
    assert p_show(xyz() ** 2) == "x^2 + 2xy + 2xz + y^2 + 2yz + z^2"


def test_xyz_cubed_coefficients():
    expected = {
        "xxx": 1, "xxy": 3, "xyy": 3, "xyz": 6, "xxz": 3, "xzz": 3,
        "yyy": 1, "yyz": 3, "yzz": 3, "zzz": 1,
    }
    p = xyz() ** 3
    got = {"".join(v * e for v, e in m.items()): c for m, c in p.terms.items()}
    assert got == expected


def test_xyz_cubed_render():
    assert p_show(xyz() ** 3) == (
        "x^3 + 3x^2y + 3x^2z + 3xy^2 + 6xyz + 3xz^2 + y^3 + 3y^2z + 3yz^2 + z^3"
    )


def test_m_eval():
    assert m_eval(xyz() ** 2, {"x": 1, "y": 2, "z": 3}) == 36


def test_m_eval_missing_variable():
    with pytest.raises(KeyError, match="'z'"):
        m_eval(xyz(), {"x": 1, "y": 2})


def test_render_mixed_monomial():
    p = PolyM({monomial({"x": 2, "y": 1}): 3})
    assert p_show(p) == "3x^2y"


exps = st.dictionaries(st.sampled_from("xyz"), st.integers(0, 4), max_size=3)
vals = st.fixed_dictionaries(
    {v: st.fractions(min_value=-5, max_value=5, max_denominator=7) for v in "xyz"}
)


@given(exps, exps, vals)
def test_monomial_power_laws(p, q, env):
    assert mono_pow(env, monomial(), RATIONAL) == 1
    lhs = mono_pow(env, monomial(p) + monomial(q), RATIONAL)
    assert lhs == mono_pow(env, monomial(p), RATIONAL) * mono_pow(env, monomial(q), RATIONAL)


@given(st.integers(0, 2**32 - 1), st.integers(-3, 3), st.integers(-3, 3))
def test_multivariate_eval_homomorphism(seed, x, y):
    rng = random.Random(seed)

    def rand():
        return PolyM(
            {monomial({"x": rng.randint(0, 3), "y": rng.randint(0, 3)}): rng.randint(-5, 5)
             for _ in range(rng.randint(0, 4))}
        )

    p, q = rand(), rand()
    env = {"x": x, "y": y}
    assert m_eval(p * q, env) == m_eval(p, env) * m_eval(q, env)


def test_unicode_variable_names_sort_by_code_point():
    p = m_var("β") + m_var("a") + m_var("Z")
    assert p_show(p) == "Z + a + β"


def test_parse_poly():
    assert parse_poly("x+3") == m_var("x") + PolyM.const(3)
    assert p_show(parse_poly("2x^2y - 1/2z + 7")) == "2x^2y - 1/2*z + 7"
    assert parse_poly("x*x") == parse_poly("xx") == parse_poly("x^2")
    assert parse_poly("x1 x2") == m_var("x1") * m_var("x2")
    with pytest.raises(ValueError):
        parse_poly("x + ")


def test_monomials_are_keyed_vectors():
    m = monomial({"x": 2})
    assert isinstance(m, KeyedVector) and m + monomial({"x": 1}) == monomial({"x": 3})
