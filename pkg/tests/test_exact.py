from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from chowgw.exact import (MissingBindingError, N, ParameterMismatchError, ParamPoly,
                          as_rational, format_rational, poly_arith, poly_eval, to_param)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polys(draw, max_deg=4):
    coeffs = draw(st.lists(fractions, min_size=0, max_size=max_deg + 1))
    return ParamPoly({(i,): c for i, c in enumerate(coeffs)})


@given(polys(), polys(), polys())
@settings(max_examples=150)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ParamPoly.zero()
    assert a * 1 == a and a + 0 == a


@given(polys(), polys(), st.integers(-30, 30))
@settings(max_examples=150)
def test_eval_is_homomorphism(a, b, n):
    env = {"n": n}
    assert (a + b).eval(env) == a.eval(env) + b.eval(env)
    assert (a * b).eval(env) == a.eval(env) * b.eval(env)
    assert (a ** 3).eval(env) == a.eval(env) ** 3


@given(polys(), polys())
def test_degree_of_product(a, b):
    if a and b:
        assert (a * b).degree() == a.degree() + b.degree()
    else:
        assert (a * b).degree() == -1


def test_examples():
    assert poly_arith(2 * N - 3, N + 1, "mul") == 2 * N ** 2 - N - 3
    assert (2 * N - 3).eval({"n": 5}) == 7
    assert poly_eval(N ** 2 - 5 * N + 5, {"n": 3}) == -1
    assert str(2 * N ** 3 - 8 * N ** 2 + 9 * N - 1) == "2n^3-8n^2+9n-1"
    assert (2 * N ** 3 - 8 * N ** 2 + 9 * N - 1).expr() == "2*n^3 - 8*n^2 + 9*n - 1"
    assert str(Fraction(3, 2) * N) == "(3/2)n"
    assert str(ParamPoly.zero()) == "0"


def test_exact_rationals_never_float():
    p = N / 3
    assert p.eval({"n": 1}) == Fraction(1, 3)
    assert isinstance(p.eval({"n": 1}), Fraction)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_errors():
    m = ParamPoly.var("m", ("m",))
    with pytest.raises(ParameterMismatchError):
        N + m
    with pytest.raises(MissingBindingError):
        N.eval({})
    with pytest.raises(ZeroDivisionError):
        N / 0
    with pytest.raises(ValueError):
        N ** -1


def test_substitute_and_coefficients():
    p = (N - 2) * (N + 9)
    assert p.substitute("n", N + 1) == (N - 1) * (N + 10)
    assert p.coefficients() == [-18, 7, 1]
    assert to_param(4) == 4 and ParamPoly.const(4).is_constant()
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert hash(N + 1) == hash(1 + N)
