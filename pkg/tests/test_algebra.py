"""Exact-arithmetic kernel tests: canonical forms, field axioms, and the
polynomial gcd machinery, cross-checked against brute-force oracles."""
import random
from fractions import Fraction

import pytest

from qbernoulli.algebra import (
    PoleError,
    PolyQ,
    RationalFunctionQ,
    VarPoly,
    eval_at,
    lam_poly,
    limit_at_q1,
    normalize,
    poly_gcd,
    rf,
)


def rand_poly(rng, max_deg=4, bound=6, nonzero=False):
    while True:
        p = PolyQ([rng.randint(-bound, bound) for _ in range(rng.randint(0, max_deg) + 1)])
        if not nonzero or not p.is_zero:
            return p


def rand_rf(rng, max_deg=3, bound=5):
    return RationalFunctionQ(rand_poly(rng, max_deg, bound), rand_poly(rng, max_deg, bound, nonzero=True))


# ---------------------------------------------------------------------------
# PolyQ basics
# ---------------------------------------------------------------------------


def test_polyq_trims_and_compares():
    assert PolyQ([1, 2, 0, 0]) == PolyQ([1, 2])
    assert PolyQ([]).is_zero
    assert PolyQ([0]).is_zero
    assert PolyQ([3]).degree == 0
    assert PolyQ([0, 0, 5]).degree == 2


def test_polyq_rejects_non_int():
    with pytest.raises(TypeError):
        PolyQ([Fraction(1, 2)])


def test_poly_mul_matches_schoolbook_on_random_inputs():
    # exercises both the schoolbook and the big-int packed paths
    rng = random.Random(1234)
    for _ in range(300):
        a = [rng.randint(-50, 50) for _ in range(rng.randint(1, 40))]
        b = [rng.randint(-50, 50) for _ in range(rng.randint(1, 40))]
        ref = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                ref[i + j] += ai * bj
        assert PolyQ(a) * PolyQ(b) == PolyQ(ref)


def test_poly_pow_and_shift():
    p = PolyQ([1, 1])
    assert p**3 == PolyQ([1, 3, 3, 1])
    assert p**0 == PolyQ([1])
    assert PolyQ([2, 1]).shift(2) == PolyQ([0, 0, 2, 1])


def test_subst_pow_spreads_coefficients():
    p = PolyQ([1, -2, 3])
    assert p.subst_pow(2) == PolyQ([1, 0, -2, 0, 3])
    assert p.subst_pow(1) is p


def test_exact_division_and_divides():
    a = PolyQ([1, 1]) * PolyQ([-1, 0, 2])
    assert a.exact_div(PolyQ([1, 1])) == PolyQ([-1, 0, 2])
    assert PolyQ([1, 1]).divides(a)
    assert not PolyQ([1, 1, 1]).divides(a)
    with pytest.raises(ArithmeticError):
        a.exact_div(PolyQ([1, 1, 1]))


def test_poly_gcd_recovers_planted_common_factor():
    rng = random.Random(99)
    for _ in range(150):
        g = rand_poly(rng, 3, 4, nonzero=True)
        a = g * rand_poly(rng, 3, 4, nonzero=True)
        b = g * rand_poly(rng, 3, 4, nonzero=True)
        d = poly_gcd(a, b)
        assert d.divides(a) and d.divides(b)
        # the planted factor divides the gcd
        _, gp = g.split_content()
        assert d.degree >= gp.degree
        qa, qb = a.exact_div(d), b.exact_div(d)
        assert poly_gcd(qa, qb).degree == 0


def test_poly_gcd_of_coprimes_is_constant():
    assert poly_gcd(PolyQ([1, 1]), PolyQ([2, 1])) == PolyQ([1])
    assert poly_gcd(PolyQ([-1, 1]), PolyQ([1, 1])) == PolyQ([1])


# ---------------------------------------------------------------------------
# normalize / canonical form
# ---------------------------------------------------------------------------


def test_normalize_cancels_common_factor():
    assert normalize([-1, 0, 1], [-1, 1]) == rf([1, 1])  # (q^2-1)/(q-1) -> q+1


def test_normalize_zero_numerator():
    z = normalize([0], [1, 1])
    assert z.is_zero
    assert z.num == PolyQ() and z.den == PolyQ([1])


def test_normalize_sign_canonicalization():
    # (1-q)/(1-q)^2 -> -1/(q-1), denominator leading coefficient positive
    f = normalize([1, -1], [1, -2, 1])
    assert f.num == PolyQ([-1])
    assert f.den == PolyQ([-1, 1])
    assert f.den.leading > 0


def test_normalize_zero_denominator_raises():
    with pytest.raises(ZeroDivisionError):
        normalize([1], [0])


def test_normalize_cross_multiplication_characterization():
    rng = random.Random(5)
    for _ in range(200):
        a, b = rand_poly(rng), rand_poly(rng, nonzero=True)
        c, d = rand_poly(rng), rand_poly(rng, nonzero=True)
        same = normalize(list(a.coeffs), list(b.coeffs)) == normalize(list(c.coeffs), list(d.coeffs))
        assert same == (a * d == b * c)


def test_normalize_idempotent():
    rng = random.Random(6)
    for _ in range(200):
        f = rand_rf(rng)
        again = normalize(list(f.num.coeffs), list(f.den.coeffs))
        assert again.num == f.num and again.den == f.den


def test_normalize_accepts_fraction_coefficients():
    f = normalize([Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 3)])
    assert f == rf([3, 3], [2])


def test_canonical_contents_are_coprime():
    rng = random.Random(7)
    for _ in range(200):
        f = rand_rf(rng)
        if f.is_zero:
            continue
        import math

        cn, _ = f.num.split_content()
        cd, _ = f.den.split_content()
        assert math.gcd(cn, cd) == 1
        assert f.den.leading > 0


# ---------------------------------------------------------------------------
# field axioms and arithmetic consistency (seeded, >= 1000 cases)
# ---------------------------------------------------------------------------


def test_fraction_field_axioms_seeded():
    rng = random.Random(2024)
    for _ in range(1000):
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


def test_rational_function_field_axioms_seeded():
    rng = random.Random(2025)
    for _ in range(1000):
        a, b, c = (rand_rf(rng, 2, 3) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


def test_rational_function_mul_add_inverse_laws():
    rng = random.Random(11)
    for _ in range(300):
        a = rand_rf(rng)
        b = rand_rf(rng)
        assert a + (-a) == 0
        assert a - b == a + (-b)
        if not b.is_zero:
            assert (a / b) * b == a
            assert b * b.inv() == 1


def test_lambda_poly_axioms_coefficientwise_seeded():
    rng = random.Random(2026)
    for _ in range(1000):
        a, b, c = (
            lam_poly([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rng.randint(1, 4))])
            for _ in range(3)
        )
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


def test_lambda_poly_axioms_with_rf_coefficients():
    rng = random.Random(2027)
    for _ in range(150):
        a, b, c = (
            lam_poly([rand_rf(rng, 2, 3) for _ in range(rng.randint(1, 3))]) for _ in range(3)
        )
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


# ---------------------------------------------------------------------------
# evaluation and the q -> 1 limit
# ---------------------------------------------------------------------------


def test_eval_at_examples():
    assert eval_at(rf([1, 1]), 4) == 5
    beta1 = rf([-1], [1, 1])
    assert eval_at(beta1, 4) == Fraction(-1, 5)
    with pytest.raises(PoleError):
        eval_at(rf([1], [-1, 1]), 1)  # 1/(q-1) at q=1


def test_eval_canonicalized_removable_singularity():
    # (1-q^2)/(1-q) normalizes to 1+q, so the q=1 value is the limit
    f = normalize([1, 0, -1], [1, -1])
    assert eval_at(f, 1) == 2
    assert limit_at_q1(f) == 2


def test_limit_examples():
    assert limit_at_q1(normalize([1, 0, 0, -1], [1, -1])) == 3  # [3]_q
    assert limit_at_q1(rf([-1], [1, 1])) == Fraction(-1, 2)
    with pytest.raises(PoleError):
        limit_at_q1(rf([1], [-1, 1]))


def test_eval_commutes_with_arithmetic():
    rng = random.Random(13)
    q0 = Fraction(3, 2)
    for _ in range(300):
        f, g = rand_rf(rng), rand_rf(rng)
        try:
            fv, gv = eval_at(f, q0), eval_at(g, q0)
        except PoleError:
            continue
        assert eval_at(f * g, q0) == fv * gv
        assert eval_at(f + g, q0) == fv + gv


def test_limit_multiplicative_when_defined():
    rng = random.Random(17)
    hits = 0
    for _ in range(400):
        f, g = rand_rf(rng), rand_rf(rng)
        try:
            lf, lg, lfg = limit_at_q1(f), limit_at_q1(g), limit_at_q1(f * g)
        except PoleError:
            continue
        hits += 1
        assert lfg == lf * lg
    assert hits > 100


def test_pow_positive_and_negative():
    f = rf([0, 1], [1, 1])  # q/(1+q)
    assert f**2 == rf([0, 0, 1], [1, 2, 1])
    assert f**-1 == rf([1, 1], [0, 1])
    assert f**0 == 1
    with pytest.raises(ZeroDivisionError):
        rf(0) ** -1


def test_subst_pow_preserves_canonical_form():
    rng = random.Random(19)
    for _ in range(100):
        f = rand_rf(rng)
        g = f.subst_pow(3)
        again = normalize(list(g.num.coeffs), list(g.den.coeffs))
        assert g.num == again.num and g.den == again.den


def test_hash_consistency():
    a = rf([-1], [1, 1])
    b = normalize([1, -1], [-1, 0, 1])  # (1-q)/(q^2-1) = -1/(1+q)
    assert a == b and hash(a) == hash(b)


# ---------------------------------------------------------------------------
# VarPoly
# ---------------------------------------------------------------------------


def test_varpoly_trims_falsy_leading_coeffs():
    assert lam_poly([Fraction(0)]).is_zero
    assert lam_poly([1, rf(0)]).degree == 0


def test_varpoly_scalar_mixing():
    p = lam_poly([Fraction(1), Fraction(2)])
    assert p + 1 == lam_poly([Fraction(2), Fraction(2)])
    assert 3 * p == lam_poly([3, 6])
    assert p - p == 0
    assert (p * 0).is_zero


def test_varpoly_mul_known_product():
    # (1 + L)(1 - L) = 1 - L^2
    assert lam_poly([1, 1]) * lam_poly([1, -1]) == lam_poly([1, 0, -1])


def test_varpoly_eval_horner():
    p = lam_poly([Fraction(1), Fraction(-2), Fraction(1)])
    assert p(Fraction(3)) == 1 - 6 + 9


def test_varpoly_nesting_defers_to_outer_variable():
    lam = VarPoly("L", (0, Fraction(1)))
    x = VarPoly("x", (0, Fraction(1)))
    prod = lam * x  # must come out as an x-polynomial with lambda coefficients
    assert prod.var == "x"
    assert prod.coeff(1) == lam
    s = lam + x
    assert s.var == "x"
    assert s.coeff(0) == lam and s.coeff(1) == 1


def test_varpoly_cross_variable_constant_equality():
    lam = VarPoly("L", (0, Fraction(1)))
    wrapped = VarPoly("x", (lam,))
    assert wrapped == lam
    assert lam == wrapped
    assert VarPoly("x", (0, Fraction(1))) != lam


def test_varpoly_division_by_scalars():
    p = lam_poly([Fraction(1), Fraction(2)])
    assert p / 2 == lam_poly([Fraction(1, 2), Fraction(1)])
    assert p / Fraction(1, 3) == lam_poly([3, 6])
    with pytest.raises(ArithmeticError):
        p / lam_poly([1, 1])


def test_varpoly_str_canonical():
    assert str(lam_poly([rf([-1], [1, 1])])) == "((-1)/(1+q))"
    assert str(lam_poly([rf(1), rf([0, 1])])) == "(1)+(q)*L"
    assert str(VarPoly("L")) == "0"


def test_rf_str_canonical():
    assert str(rf([-1], [1, 1])) == "(-1)/(1+q)"
    assert str(rf([1, 1])) == "1+q"
    assert str(rf(0)) == "0"
    assert str(rf([0, -1, 3])) == "-q+3*q^2"
