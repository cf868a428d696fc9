"""Truncated-series engine and Bernoulli generating functions.

The classical values are cross-checked against the umbral recurrence
(B+1)^n - B_n = [n == 1], which is computed here independently of the
series machinery.
"""
import math
import random
from fractions import Fraction

import pytest

from qbernoulli.algebra import VarPoly, lam_poly
from qbernoulli.series import (
    TruncatedSeries,
    classical_bernoulli,
    degenerate_bernoulli_carlitz,
    degenerate_bernoulli_kim,
    degenerate_exp,
    exp_series,
    higher_bernoulli,
    higher_degenerate_bernoulli,
    series_div,
    symbol_x,
)


def umbral_bernoulli(count):
    """B_0..B_count, solving sum_{k=0}^{m} C(m+1,k) B_k = [m+1 == 1] for B_m."""
    b = [Fraction(1)]
    for m in range(1, count + 1):
        acc = Fraction(0)  # delta_{m+1,1} vanishes for every m >= 1
        for k in range(m):
            acc -= math.comb(m + 1, k) * b[k]
        b.append(acc / (m + 1))
    return b


def bernoulli_poly_from_numbers(n, x, numbers):
    return sum(math.comb(n, k) * numbers[k] * Fraction(x) ** (n - k) for k in range(n + 1))


# ---------------------------------------------------------------------------
# series arithmetic
# ---------------------------------------------------------------------------


def test_series_construction_pads_and_truncates():
    s = TruncatedSeries(3, [1, 2])
    assert s.coeffs == (1, 2, 0, 0)
    assert s.truncate(1).coeffs == (1, 2)
    with pytest.raises(ValueError):
        s.truncate(5)


def test_series_mul_is_truncated_convolution():
    a = TruncatedSeries(3, [Fraction(1), Fraction(1)])
    b = TruncatedSeries(3, [Fraction(1), Fraction(2), Fraction(1)])
    assert (a * b).coeffs == (1, 3, 3, 1)


def test_series_div_bernoulli_to_order_two():
    # t/(e^t - 1): plain coefficients 1, -1/2, 1/12; exponential ones B_n
    num = TruncatedSeries.one(2)
    den = TruncatedSeries(2, [Fraction(1, math.factorial(m + 1)) for m in range(3)])
    q = series_div(num, den)
    assert q.coeffs == (1, Fraction(-1, 2), Fraction(1, 12))
    assert [q.egf(n) for n in range(3)] == [1, Fraction(-1, 2), Fraction(1, 6)]


def test_series_div_self_is_one():
    rng = random.Random(21)
    for _ in range(50):
        order = rng.randint(0, 8)
        coeffs = [Fraction(rng.randint(1, 5))] + [
            Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(order)
        ]
        f = TruncatedSeries(order, coeffs)
        assert series_div(f, f) == TruncatedSeries.one(order)


def test_series_div_cancels_product():
    rng = random.Random(22)
    for _ in range(80):
        order = rng.randint(0, 8)
        a = TruncatedSeries(order, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order + 1)])
        b = TruncatedSeries(order, [Fraction(rng.choice([1, 2, -1, 3]))] + [
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(order)
        ])
        assert series_div(a * b, b) == a


def test_series_div_common_valuation():
    # (t + t^2) / (t - t^2) = (1+t)/(1-t) = 1 + 2t + 2t^2 ...
    num = TruncatedSeries(3, [0, Fraction(1), Fraction(1)])
    den = TruncatedSeries(3, [0, Fraction(1), Fraction(-1)])
    q = series_div(num, den)
    assert q.order == 2
    assert q.coeffs == (1, 2, 2)


def test_series_div_degenerate_ratio_order_one():
    # L(t)/(E(t)-1) to order 1 is 1 - t/2, lambda-free at this order
    from qbernoulli.series import _deg_exp_minus1_over_t, _deg_log_over_t

    q = series_div(_deg_log_over_t(1), _deg_exp_minus1_over_t(1))
    assert q.coeff(0) == 1
    assert q.coeff(1) == Fraction(-1, 2)


def test_series_div_errors():
    zero = TruncatedSeries(2)
    one = TruncatedSeries.one(2)
    with pytest.raises(ZeroDivisionError):
        series_div(one, zero)
    with pytest.raises(ArithmeticError):
        series_div(one, TruncatedSeries(2, [0, Fraction(1)]))  # numerator valuation too small
    bad_lead = TruncatedSeries(2, [lam_poly([0, Fraction(1)]), Fraction(1)])
    with pytest.raises(ArithmeticError):
        series_div(TruncatedSeries.one(2), bad_lead)


# ---------------------------------------------------------------------------
# classical and higher-order Bernoulli
# ---------------------------------------------------------------------------


def test_classical_bernoulli_base_values():
    assert classical_bernoulli(0, Fraction(7, 3)) == 1
    assert classical_bernoulli(1) == Fraction(-1, 2)
    assert classical_bernoulli(2) == Fraction(1, 6)
    assert classical_bernoulli(2, 1) == Fraction(1, 6)


def test_classical_bernoulli_matches_umbral_recurrence():
    numbers = umbral_bernoulli(12)
    for n in range(13):
        assert classical_bernoulli(n) == numbers[n], n
        for x in (1, 2, Fraction(1, 2)):
            assert classical_bernoulli(n, x) == bernoulli_poly_from_numbers(n, x, numbers)


def test_higher_bernoulli_reduces_and_squares():
    for n in range(11):
        assert higher_bernoulli(n, 1) == classical_bernoulli(n)
    for r in (1, 2, 3, 4):
        assert higher_bernoulli(0, r) == 1
    assert higher_bernoulli(1, 2) == -1


def test_higher_bernoulli_requires_positive_order():
    with pytest.raises(ValueError):
        higher_bernoulli(1, 0)


# ---------------------------------------------------------------------------
# degenerate families
# ---------------------------------------------------------------------------


def test_degenerate_kim_base_values():
    assert degenerate_bernoulli_kim(0) == 1
    assert degenerate_bernoulli_kim(1) == Fraction(-1, 2)


def test_degenerate_kim_lambda_zero_is_classical():
    for n in range(9):
        for x in (0, 1, 2):
            pol = degenerate_bernoulli_kim(n, x)
            assert pol(Fraction(0)) == classical_bernoulli(n, x), (n, x)


def test_degenerate_carlitz_first_value():
    assert degenerate_bernoulli_carlitz(1) == lam_poly([Fraction(-1, 2), Fraction(1, 2)])


def test_degenerate_carlitz_lambda_zero_is_classical():
    for n in range(9):
        pol = degenerate_bernoulli_carlitz(n, 1)
        assert pol(Fraction(0)) == classical_bernoulli(n, 1)


def test_higher_degenerate_reduces_to_kim():
    for n in range(7):
        for x in (0, 2):
            assert higher_degenerate_bernoulli(n, 1, x) == degenerate_bernoulli_kim(n, x)


def test_higher_degenerate_lambda_zero():
    for n in range(7):
        for r in (1, 2, 3):
            for x in (0, 1):
                assert higher_degenerate_bernoulli(n, r, x)(Fraction(0)) == higher_bernoulli(n, r, x)


def test_higher_degenerate_order_two_t_coefficient():
    assert higher_degenerate_bernoulli(1, 2) == -1


def test_lambda_degree_bounds():
    from qbernoulli.series import _deg_exp_minus1_over_t, _deg_log_over_t

    for n in range(9):
        pol = degenerate_bernoulli_kim(n)
        assert isinstance(pol, VarPoly)
        assert pol.degree <= n
    for n in range(1, 8):
        log_c = _deg_log_over_t(n).coeff(n - 1)  # t^n of L(t) is index n-1 after the shift
        assert log_c.degree == n - 1
        exp_c = _deg_exp_minus1_over_t(n).coeff(n - 1)
        assert exp_c.degree == n - 1


def test_addition_theorem_via_degenerate_exp():
    # B^(r)_{n,lam}(x) = sum_l C(n,l) (x|lam)_{n-l} B^(r)_{l,lam}(0)
    from qbernoulli.series import _falling_products, lam_variable

    for n in range(7):
        for r in (1, 2):
            for x in (1, 2, Fraction(1, 2)):
                ff = _falling_products(Fraction(x), lam_variable(), n)
                rhs = None
                for l in range(n + 1):
                    term = math.comb(n, l) * ff[n - l] * higher_degenerate_bernoulli(l, r, 0)
                    rhs = term if rhs is None else rhs + term
                assert higher_degenerate_bernoulli(n, r, x) == rhs, (n, r, x)


def test_degenerate_exp_symbolic_coefficients():
    x = symbol_x()
    s = degenerate_exp(x, 3)
    # t^2 coefficient is x(x - lam)/2
    c2 = s.coeff(2)
    assert c2.var == "x"
    assert c2.coeff(2) == Fraction(1, 2)
    assert c2.coeff(1) == lam_poly([0, Fraction(-1, 2)])


def test_symbolic_specializes_to_numeric():
    x = symbol_x()
    for n in range(6):
        sym = degenerate_bernoulli_kim(n, x)
        for x0 in (0, 1, 2):
            specialized = sym(Fraction(x0)) if isinstance(sym, VarPoly) and sym.var == "x" else sym
            assert specialized == degenerate_bernoulli_kim(n, x0), (n, x0)
