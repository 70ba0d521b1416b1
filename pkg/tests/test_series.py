from fractions import Fraction

import pytest

from chowgw.series import (PoincareData, PoincareInvariantError, PowerSeries2,
                           TruncationMismatchError, boundary_sum, divide_by_eta_product,
                           poincare, series_inverse, series_mul, theta_sum, generating_series)


def test_arithmetic():
    one = PowerSeries2.one(6, 3)
    x = PowerSeries2(6, 3, {(1, 0): 1, (0, 1): 2})
    inv = (one - x).inverse()
    assert series_mul(inv, one - x) == one
    assert series_inverse(one - x) == inv
    # 1/(1 - q) has all q-coefficients 1 in t^0
    geo = (one - PowerSeries2.monomial(6, 3, 1, 0)).inverse()
    assert geo.t_coefficient(0) == [1] * 7
    with pytest.raises(TruncationMismatchError):
        one + PowerSeries2.one(5, 3)
    with pytest.raises(ZeroDivisionError):
        one / PowerSeries2.monomial(6, 3, 1, 0)


def test_q_squared_minus_one_inverse():
    tq = 10
    s = PowerSeries2(tq, 0, {(2, 0): 1, (0, 0): -1})
    inv = s.inverse()
    assert inv.t_coefficient(0) == [-1 if i % 2 == 0 else 0 for i in range(tq + 1)]


@pytest.mark.parametrize("tq,tt", [(6, 2), (14, 3), (24, 4)])
def test_truncation_consistency(tq, tt):
    small = generating_series(tq, tt)
    big = generating_series(tq + 8, tt + 2)
    assert big.restrict(tq, tt) == small
    for f in (theta_sum, boundary_sum):
        assert f(tq + 8, tt + 2).restrict(tq, tt) == f(tq, tt)
    x = theta_sum(tq + 8, tt + 2)
    assert divide_by_eta_product(x).restrict(tq, tt) == divide_by_eta_product(x.restrict(tq, tt))


def test_examples():
    assert poincare(1).betti == (1,)
    assert poincare(2).betti == (1, 0, 2, 0, 3, 0, 2, 0, 1)
    assert poincare(3).b(4) == 6
    assert poincare(4).b(4) == 6


@pytest.mark.parametrize("n", range(1, 9))
def test_poincare_properties(n):
    p = poincare(n)
    top = 8 * n - 8
    assert len(p.betti) == top + 1 and p.betti[-1] > 0
    assert all(isinstance(b, int) and b >= 0 for b in p.betti)
    assert all(p.b(i) == 0 for i in range(1, top, 2))
    assert p.betti == tuple(reversed(p.betti))
    assert p.b(0) == 1
    if n >= 2:
        assert p.b(2) == 2
    assert p.dimension == 4 * n - 4


def test_extracted_coefficient_is_polynomial():
    s = generating_series(8 * 3 - 8 + 6, 3)
    coeffs = s.t_coefficient(3)
    assert all(c == 0 for c in coeffs[17:])
    assert all(isinstance(c, Fraction) and c.denominator == 1 for c in coeffs)


def test_slack_does_not_change_answer():
    assert poincare(3, slack=2) == poincare(3, slack=6)


def test_invariant_violations():
    with pytest.raises(PoincareInvariantError):
        PoincareData(2, (1, 0, 2, 0, 3, 0, 1, 0, 1)).validate()
    with pytest.raises(PoincareInvariantError):
        PoincareData(2, (1, 1, 2, 0, 3, 0, 2, 1, 1)).validate()
    with pytest.raises(TruncationMismatchError):
        poincare(3, series=generating_series(10, 3))
    with pytest.raises(ValueError):
        poincare(0)
