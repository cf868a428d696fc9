"""q-number, Stirling, falling-factorial and T-sum tests; expected values
come from brute-force expansion, never from the code under test."""
import itertools
import random
from fractions import Fraction

import pytest

from qbernoulli.algebra import limit_at_q1, rf
from qbernoulli.qcore import (
    QExponentArg,
    bernoulli_second_kind,
    composition_counts,
    falling_factorial_expand,
    q_number,
    stirling1,
    t_sum,
)


def brute_stirling_row(n):
    """Coefficients of x(x-1)...(x-n+1) by direct convolution."""
    coeffs = [1]
    for i in range(n):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] += -i * c
        coeffs = nxt
    return coeffs


# ---------------------------------------------------------------------------
# QExponentArg and q_number
# ---------------------------------------------------------------------------


def test_qexponent_validation():
    with pytest.raises(ValueError):
        QExponentArg(-1, 1)
    with pytest.raises(ValueError):
        QExponentArg(1, 0)
    arg = QExponentArg.of_int(3, 2)
    assert (arg.e, arg.w) == (6, 2)
    assert arg.value == 3


def test_q_number_examples():
    assert q_number(QExponentArg(0, 1)).is_zero
    assert q_number(QExponentArg(3, 1)) == rf([1, 1, 1])
    assert q_number(QExponentArg(3, 2)) == rf([1, 1, 1], [1, 1])


def test_q_number_limit_is_the_plain_value():
    for e in range(11):
        for w in range(1, 5):
            assert limit_at_q1(q_number(QExponentArg(e, w))) == Fraction(e, w)


def test_q_number_splitting_law():
    # [a+b]_{q^w} = [a]_{q^w} + q^(w a) [b]_{q^w}, as exact identities
    for w in range(1, 4):
        for a in range(7):
            for b in range(7):
                lhs = q_number(QExponentArg.of_int(a + b, w))
                rhs = q_number(QExponentArg.of_int(a, w)) + q_number(
                    QExponentArg.of_int(b, w)
                ) * rf([0] * (w * a) + [1])
                assert lhs == rhs, (a, b, w)


def test_rebasing_identity_small_grid():
    # [w1 w2 x + w2 Sj + w1 Sy]_q = [w1]_q [w2 x + (w2/w1) Sj + Sy]_{q^w1}
    for w1, w2 in itertools.product(range(1, 4), repeat=2):
        for x in range(3):
            for r in (1, 2):
                for js in itertools.product(range(3), repeat=r):
                    for ys in itertools.product(range(3), repeat=r):
                        e = w1 * w2 * x + w2 * sum(js) + w1 * sum(ys)
                        lhs = q_number(QExponentArg(e, 1))
                        rhs = q_number(QExponentArg.of_int(w1)) * q_number(QExponentArg(e, w1))
                        assert lhs == rhs


# ---------------------------------------------------------------------------
# Stirling numbers of the first kind
# ---------------------------------------------------------------------------


def test_stirling_base_and_sign_fixing_values():
    assert stirling1(0, 0) == 1
    assert stirling1(2, 1) == -1
    assert stirling1(2, 2) == 1
    assert stirling1(3, 1) == 2
    assert stirling1(3, 2) == -3
    assert stirling1(2, 5) == 0  # l > n is zero, not an error


def test_stirling_against_brute_force_rows():
    for n in range(11):
        row = brute_stirling_row(n)
        for l in range(n + 1):
            assert stirling1(n, l) == row[l], (n, l)


def test_stirling_recurrence():
    for n in range(12):
        for l in range(n + 2):
            lhs = stirling1(n + 1, l)
            rhs = (stirling1(n, l - 1) if l >= 1 else 0) - n * stirling1(n, l)
            assert lhs == rhs


def test_stirling_row_identities():
    for n in range(2, 12):
        assert sum(stirling1(n, l) for l in range(n + 1)) == 0
        assert stirling1(n, n) == 1
        assert stirling1(n, 0) == 0


def test_falling_factorial_expand_examples():
    assert falling_factorial_expand(0) == (1,)
    assert falling_factorial_expand(2) == (0, -1, 1)
    assert falling_factorial_expand(3) == (0, 2, -3, 1)


def test_falling_factorial_expand_reproduces_product_at_lambda_one():
    for n in range(8):
        row = falling_factorial_expand(n)
        for y in range(n + 1):
            brute = 1
            for k in range(n):
                brute *= y - k
            assert sum(c * y**l for l, c in enumerate(row)) == brute


def test_falling_factorial_homogeneity_random_lambda():
    # (y)_{n,lam} = sum_l S1(n,l) lam^(n-l) y^l for rational y, lam
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(0, 6)
        y = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        lam = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        brute = Fraction(1)
        for k in range(n):
            brute *= y - k * lam
        row = falling_factorial_expand(n)
        assert sum(c * lam ** (n - l) * y**l for l, c in enumerate(row)) == brute


# ---------------------------------------------------------------------------
# Bernoulli numbers of the second kind
# ---------------------------------------------------------------------------


def test_bernoulli_second_kind_values():
    assert bernoulli_second_kind(0) == 1
    assert bernoulli_second_kind(1) == Fraction(1, 2)
    assert bernoulli_second_kind(2) == Fraction(-1, 6)


def test_bernoulli_second_kind_against_convolution_recurrence():
    # sum_k (b_k / k!) * (-1)^(n-k)/(n-k+1) = [n == 0]
    import math

    b = [bernoulli_second_kind(n) for n in range(10)]
    for n in range(10):
        acc = Fraction(0)
        for k in range(n + 1):
            acc += b[k] / math.factorial(k) * Fraction((-1) ** (n - k), n - k + 1)
        assert acc == (1 if n == 0 else 0), n


# ---------------------------------------------------------------------------
# T-sums
# ---------------------------------------------------------------------------


def brute_t_sum(n, i, r, w, m):
    """Direct tuple enumeration with rational-function arithmetic."""
    total = rf(0)
    for js in itertools.product(range(w), repeat=r):
        s = sum(js)
        if i == 0:
            bracket_pow = rf(1)
        else:
            bracket_pow = q_number(QExponentArg.of_int(s, m)) ** i
        total = total + bracket_pow * rf([0] * (m * (n - i) * s) + [1])
    return total


def test_t_sum_degenerate_w1():
    for n in range(4):
        assert t_sum(n, 0, 1, 1) == 1
    for i in (1, 2):
        assert t_sum(3, i, 1, 1).is_zero


def test_t_sum_examples():
    for n in (1, 2, 3):
        assert t_sum(n, 0, 1, 2) == rf([1] + [0] * (n - 1) + [1])  # 1 + q^n
    assert t_sum(1, 1, 1, 2) == 1


def test_t_sum_matches_brute_enumeration():
    rng = random.Random(8)
    for _ in range(60):
        r = rng.randint(1, 3)
        w = rng.randint(1, 3)
        m = rng.randint(1, 3)
        n = rng.randint(0, 4)
        i = rng.randint(0, n)
        assert t_sum(n, i, r, w, m) == brute_t_sum(n, i, r, w, m), (n, i, r, w, m)


def test_t_sum_validation():
    with pytest.raises(ValueError):
        t_sum(1, 2, 1, 2)
    with pytest.raises(ValueError):
        t_sum(1, 0, 0, 2)


def test_composition_counts():
    for w in range(1, 5):
        for r in range(1, 4):
            counts = composition_counts(w, r)
            assert len(counts) == r * (w - 1) + 1
            assert sum(counts) == w**r
            brute = [0] * (r * (w - 1) + 1)
            for js in itertools.product(range(w), repeat=r):
                brute[sum(js)] += 1
            assert list(counts) == brute
