"""Truncated formal power series over exact coefficient rings, and the
generating-function definitions of the classical and degenerate
Bernoulli polynomial families.

Coefficients are stored plain (a_n multiplying t**n); the exponential
accessor multiplies by n! on the way out, so products stay ordinary
convolutions.  Supported coefficient rings: Fraction, polynomials in
lambda over Fraction, and polynomials in a symbolic x over those.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Union

from .algebra import LAMBDA_VAR, RationalFunctionQ, VarPoly

Coeff = Union[int, Fraction, VarPoly, RationalFunctionQ]

__all__ = [
    "TruncatedSeries",
    "series_div",
    "exp_series",
    "degenerate_exp",
    "classical_bernoulli",
    "higher_bernoulli",
    "degenerate_bernoulli_kim",
    "degenerate_bernoulli_carlitz",
    "higher_degenerate_bernoulli",
    "symbol_x",
    "lam_variable",
]


class TruncatedSeries:
    """Formal power series known modulo t**(order+1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Coeff] = ()):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = list(coeffs)[: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, (Fraction(1),))

    def coeff(self, n: int) -> Coeff:
        return self.coeffs[n]

    def egf(self, n: int) -> Coeff:
        """n-th exponential coefficient, i.e. n! times the plain one."""
        return self.coeffs[n] * factorial(n)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.order, other.order)
        return TruncatedSeries(k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.order, other.order)
        return TruncatedSeries(k, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.order, other.order)
        out: list[Coeff] = [0] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if not a:
                continue
            for j in range(k + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(k, out)

    def scale(self, s: Coeff) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(c * s for c in self.coeffs))

    def __pow__(self, r: int) -> "TruncatedSeries":
        if r < 0:
            raise ValueError("series power must be nonnegative")
        result = TruncatedSeries.one(self.order)
        for _ in range(r):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        k = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(k + 1))

    def __repr__(self):
        return f"TruncatedSeries({self.order}, {list(self.coeffs)!r})"


def _invert_coeff(c: Coeff) -> Coeff:
    if isinstance(c, int):
        if c == 0:
            raise ArithmeticError("leading series coefficient is zero")
        return Fraction(1, c)
    if isinstance(c, Fraction):
        if not c:
            raise ArithmeticError("leading series coefficient is zero")
        return 1 / c
    if isinstance(c, RationalFunctionQ):
        return c.inv()
    if isinstance(c, VarPoly):
        if c.degree == 0:
            return _invert_coeff(c.constant_term())
        raise ArithmeticError("leading series coefficient is not invertible")
    raise ArithmeticError(f"cannot invert coefficient of type {type(c).__name__}")


def series_div(numer: TruncatedSeries, denom: TruncatedSeries) -> TruncatedSeries:
    """Quotient of truncated series.

    When both arguments vanish at t = 0 the shared power of t is
    cancelled first, which lowers the working order accordingly.
    Raises ZeroDivisionError for a denominator that is zero to working
    order, ArithmeticError when the leading coefficient cannot be
    inverted or the numerator valuation is too small.
    """
    k = min(numer.order, denom.order)
    v = 0
    while v <= k and not denom.coeffs[v]:
        v += 1
    if v > k:
        raise ZeroDivisionError("series denominator is zero to working order")
    for i in range(v):
        if numer.coeffs[i]:
            raise ArithmeticError("numerator valuation below denominator valuation")
    inv = _invert_coeff(denom.coeffs[v])
    kk = k - v
    a = numer.coeffs[v:]
    b = denom.coeffs[v:]
    out: list[Coeff] = []
    for n in range(kk + 1):
        acc = a[n]
        for j in range(1, n + 1):
            if b[j]:
                acc = acc - b[j] * out[n - j]
        out.append(acc * inv)
    return TruncatedSeries(kk, out)


# ---------------------------------------------------------------------------
# elementary series
# ---------------------------------------------------------------------------


def exp_series(x: Coeff, order: int) -> TruncatedSeries:
    """e**(x t) as plain coefficients x**m / m!."""
    if isinstance(x, int):
        x = Fraction(x)
    cs: list[Coeff] = [Fraction(1)]
    cur: Coeff = Fraction(1)
    for m in range(1, order + 1):
        cur = cur * x / m if isinstance(x, Fraction) else cur * x * Fraction(1, m)
        cs.append(cur)
    return TruncatedSeries(order, cs)


def lam_variable() -> VarPoly:
    return VarPoly(LAMBDA_VAR, (0, Fraction(1)))


def symbol_x() -> VarPoly:
    """Generator for the symbolic-argument mode of the degenerate families."""
    return VarPoly("x", (0, Fraction(1)))


def _falling_products(x: Coeff, lam: Coeff, order: int) -> list[Coeff]:
    """(x | lambda)_m for m = 0..order: x (x-lam) ... (x-(m-1)lam)."""
    out: list[Coeff] = [Fraction(1)]
    cur: Coeff = Fraction(1)
    for m in range(1, order + 1):
        cur = cur * (x - (m - 1) * lam)
        out.append(cur)
    return out


def degenerate_exp(x: Coeff, order: int) -> TruncatedSeries:
    """(1 + lambda t)**(x/lambda): plain coefficients (x|lambda)_m / m!."""
    if isinstance(x, int):
        x = Fraction(x)
    ff = _falling_products(x, lam_variable(), order)
    return TruncatedSeries(order, [c * Fraction(1, factorial(m)) for m, c in enumerate(ff)])


def _exp_minus1_over_t(order: int) -> TruncatedSeries:
    return TruncatedSeries(order, [Fraction(1, factorial(m + 1)) for m in range(order + 1)])


def _deg_exp_minus1_over_t(order: int) -> TruncatedSeries:
    # ((1+lam t)**(1/lam) - 1)/t, coefficient m = (1|lam)_{m+1}/(m+1)!
    ff = _falling_products(Fraction(1), lam_variable(), order + 1)
    return TruncatedSeries(order, [ff[m + 1] * Fraction(1, factorial(m + 1)) for m in range(order + 1)])


def _deg_log_over_t(order: int) -> TruncatedSeries:
    # (1/lam) log(1+lam t) / t, coefficient m = (-lam)**m / (m+1)
    cs: list[Coeff] = []
    for m in range(order + 1):
        coeffs = [0] * m + [Fraction((-1) ** m, m + 1)]
        cs.append(VarPoly(LAMBDA_VAR, coeffs))
    return TruncatedSeries(order, cs)


# ---------------------------------------------------------------------------
# Bernoulli families
# ---------------------------------------------------------------------------


def classical_bernoulli(n: int, x: Union[int, Fraction] = 0) -> Fraction:
    """B_n(x) from the generating function t e**(xt) / (e**t - 1)."""
    base = series_div(TruncatedSeries.one(n), _exp_minus1_over_t(n))
    if x:
        base = base * exp_series(x, n)
    return Fraction(base.egf(n))


def higher_bernoulli(n: int, r: int, x: Union[int, Fraction] = 0) -> Fraction:
    """Order-r Bernoulli polynomial value B_n^(r)(x)."""
    if r < 1:
        raise ValueError("order r must be >= 1")
    base = series_div(TruncatedSeries.one(n), _exp_minus1_over_t(n)) ** r
    if x:
        base = base * exp_series(x, n)
    return Fraction(base.egf(n))


def _as_lam(value: Coeff) -> VarPoly:
    if isinstance(value, VarPoly):
        return value
    return VarPoly(LAMBDA_VAR, (Fraction(value),) if value else ())


def degenerate_bernoulli_kim(n: int, x: Coeff = 0) -> VarPoly:
    """Fully degenerate Bernoulli polynomial as a polynomial in lambda.

    x may be an int, a Fraction, or the symbolic generator symbol_x();
    in the symbolic case the result is a polynomial in x whose
    coefficients are polynomials in lambda.
    """
    base = series_div(_deg_log_over_t(n), _deg_exp_minus1_over_t(n))
    if not (isinstance(x, int) and x == 0):
        base = base * degenerate_exp(x, n)
    return _as_lam(base.egf(n))


def degenerate_bernoulli_carlitz(n: int, x: Coeff = 0) -> VarPoly:
    """Carlitz degenerate Bernoulli polynomial (t in place of the log factor)."""
    base = series_div(TruncatedSeries.one(n), _deg_exp_minus1_over_t(n))
    if not (isinstance(x, int) and x == 0):
        base = base * degenerate_exp(x, n)
    return _as_lam(base.egf(n))


def higher_degenerate_bernoulli(n: int, r: int, x: Coeff = 0) -> VarPoly:
    """Order-r fully degenerate Bernoulli polynomial in lambda."""
    if r < 1:
        raise ValueError("order r must be >= 1")
    base = series_div(_deg_log_over_t(n), _deg_exp_minus1_over_t(n)) ** r
    if not (isinstance(x, int) and x == 0):
        base = base * degenerate_exp(x, n)
    return _as_lam(base.egf(n))
