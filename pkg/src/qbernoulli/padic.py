"""Exact p-adic valuations and truncated p-adic (q-)integral sums.

Everything here is plain rational arithmetic: a truncated sum is
computed exactly as a Fraction and compared to a target by taking the
p-adic valuation of the difference.  The module deliberately depends on
nothing else in the package, so it can serve as an independent oracle
for the closed-form computations elsewhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Scalar = Union[int, Fraction]
Valuation = Union[int, float]  # math.inf for the valuation of zero

WORK_BUDGET = 10**6

__all__ = [
    "WorkBudgetError",
    "PadicContext",
    "SymmetryCheck",
    "vp",
    "mu0_truncated",
    "check_difference_eq",
    "muq_truncated_moment",
    "multi_mu0_truncated",
    "multi_muq_truncated",
    "finite_level_symmetry",
    "valuations_against",
    "nondecreasing_with_gain",
]


class WorkBudgetError(RuntimeError):
    """A truncated sum would exceed the configured term budget."""


def _vp_int(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def vp(x: Scalar, p: int) -> Valuation:
    """p-adic valuation of a rational number; vp(0) is +infinity."""
    if p < 2:
        raise ValueError("p must be a prime")
    x = Fraction(x)
    if x == 0:
        return math.inf
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def _is_small_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PadicContext:
    """Prime, rational base point and truncation ceiling for the oracles.

    q0 must satisfy vp(q0 - 1) >= 1 and the degenerate parameter lam0
    must be a p-adic integer (vp >= 0).
    """

    p: int
    q0: Fraction
    n_max: int = 6
    lam0: Fraction = Fraction(0)

    def __post_init__(self):
        if not _is_small_prime(self.p) or self.p == 2:
            raise ValueError("p must be an odd prime")
        object.__setattr__(self, "q0", Fraction(self.q0))
        object.__setattr__(self, "lam0", Fraction(self.lam0))
        if self.q0 == 1 or vp(self.q0 - 1, self.p) < 1:
            raise ValueError("q0 must satisfy vp(q0 - 1) >= 1 and q0 != 1")
        if self.lam0 != 0 and vp(self.lam0, self.p) < 0:
            raise ValueError("lam0 must be a p-adic integer")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    @classmethod
    def default(cls, p: int, n_max: int = 6, lam0: Scalar = 0) -> "PadicContext":
        """The natural test point q0 = 1 + p."""
        return cls(p, Fraction(1 + p), n_max, Fraction(lam0))


def _check_level(ctx: PadicContext, N: int, r: int = 1) -> None:
    if not 1 <= N <= ctx.n_max:
        raise ValueError(f"level N must lie in 1..{ctx.n_max}")
    if ctx.p ** (N * r) > WORK_BUDGET:
        raise WorkBudgetError(f"p**(N*r) = {ctx.p ** (N * r)} exceeds the {WORK_BUDGET} term budget")


def _poly_eval(coeffs: Sequence[Scalar], y: Scalar) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def _falling(y: Fraction, n: int, lam: Fraction) -> Fraction:
    out = Fraction(1)
    for k in range(n):
        out *= y - k * lam
    return out


def _tuple_sum_counts(bound: int, r: int) -> list[int]:
    """How many r-tuples in [0, bound)**r sum to each value."""
    counts = [1] * bound
    for _ in range(r - 1):
        nxt = [0] * (len(counts) + bound - 1)
        for s, c in enumerate(counts):
            for j in range(bound):
                nxt[s + j] += c
        counts = nxt
    return counts


def _bracket(x: int, q0: Fraction) -> Fraction:
    """[x]_{q0} = (1 - q0**x)/(1 - q0) at the rational point q0."""
    return (1 - q0**x) / (1 - q0)


# ---------------------------------------------------------------------------
# invariant integral (mu_0)
# ---------------------------------------------------------------------------


def mu0_truncated(f: Sequence[Scalar], ctx: PadicContext, N: int) -> Fraction:
    """Level-N truncation of the invariant integral of a polynomial.

    f is the coefficient sequence of the integrand (ascending powers);
    the value is p**(-N) * sum_{y < p**N} f(y), exactly.
    """
    _check_level(ctx, N)
    M = ctx.p**N
    total = Fraction(0)
    for y in range(M):
        total += _poly_eval(f, y)
    return total / M


def check_difference_eq(f: Sequence[Scalar], ctx: PadicContext, N: int) -> Valuation:
    """Valuation of the truncation defect in the shift difference equation.

    Returns vp( mu0(f(x+1)) - mu0(f(x)) - f'(0) ) at level N; by
    telescoping this equals vp( (f(p**N) - f(0))/p**N - f'(0) ).
    """
    _check_level(ctx, N)
    shifted = [Fraction(0)] * len(f)
    for j, c in enumerate(f):
        for k in range(j + 1):
            shifted[k] += math.comb(j, k) * Fraction(c)
    d = mu0_truncated(shifted, ctx, N) - mu0_truncated(f, ctx, N)
    fprime0 = Fraction(f[1]) if len(f) > 1 else Fraction(0)
    return vp(d - fprime0, ctx.p)


def multi_mu0_truncated(
    n: int, r: int, x: int, ctx: PadicContext, N: int, lam: Optional[Scalar] = None
) -> Fraction:
    """r-fold truncated invariant integral of (y_1+...+y_r+x)**n.

    With lam given, the integrand is the generalized falling factorial
    (y_1+...+y_r+x)_{n,lam} instead of the plain power.
    """
    _check_level(ctx, N, r)
    M = ctx.p**N
    lam0 = None if lam is None else Fraction(lam)
    total = Fraction(0)
    for s, cnt in enumerate(_tuple_sum_counts(M, r)):
        y = Fraction(x + s)
        g = y**n if lam0 is None else _falling(y, n, lam0)
        total += cnt * g
    return total / Fraction(M) ** r


# ---------------------------------------------------------------------------
# q-integral (mu_q)
# ---------------------------------------------------------------------------


def muq_truncated_moment(l: int, ctx: PadicContext, N: int) -> Fraction:
    """Level-N truncation of the q-integral of q**(l y).

    (1/[p**N]_{q0}) * sum_{y < p**N} q0**((l+1) y), the brute-force side
    of the moment identity whose limit is (l+1)/[l+1]_{q0}.
    """
    _check_level(ctx, N)
    M = ctx.p**N
    q0 = ctx.q0
    step = q0 ** (l + 1)
    term = Fraction(1)
    total = Fraction(0)
    for _ in range(M):
        total += term
        term *= step
    return total / _bracket(M, q0)


def multi_muq_truncated(
    n: int, r: int, x: int, ctx: PadicContext, N: int, lam: Optional[Scalar] = None
) -> Fraction:
    """r-fold truncated q-integral of [y_1+...+y_r+x]_{q0}**n.

    Each factor carries the measure weight q0**y; with lam given the
    integrand becomes the falling factorial ([...]_{q0})_{n,lam}.
    """
    _check_level(ctx, N, r)
    M = ctx.p**N
    q0 = ctx.q0
    lam0 = None if lam is None else Fraction(lam)
    total = Fraction(0)
    qpow = Fraction(1)
    for s, cnt in enumerate(_tuple_sum_counts(M, r)):
        b = _bracket(x + s, q0)
        g = b**n if lam0 is None else _falling(b, n, lam0)
        total += cnt * qpow * g
        qpow *= q0
    return total / _bracket(M, q0) ** r


# ---------------------------------------------------------------------------
# finite-level symmetry of the double digit sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetryCheck:
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _digit_double_sum(
    n: int, r: int, wa: int, wb: int, x: int, ctx: PadicContext, N: int
) -> Fraction:
    # sum over i in [0,wb)^r, j in [0,wa)^r, y in [0,p^N)^r of
    # q0^(wa*Si + wb*Sj + wa*wb*Sy) * ([wa*wb*x + wb*Sj + wa*Si + wa*wb*Sy]_{q0})_{n,lam0}
    # normalized by [wa*wb*p^N]_{q0}^r
    M = ctx.p**N
    q0 = ctx.q0
    total = Fraction(0)
    ci = _tuple_sum_counts(wb, r)
    cj = _tuple_sum_counts(wa, r)
    cy = _tuple_sum_counts(M, r)
    for a, na in enumerate(ci):
        for b, nb in enumerate(cj):
            for s, ns in enumerate(cy):
                e = wa * wb * x + wb * b + wa * a + wa * wb * s
                weight = q0 ** (wa * a + wb * b + wa * wb * s)
                total += na * nb * ns * weight * _falling(_bracket(e, q0), n, ctx.lam0)
    return total / _bracket(wa * wb * M, q0) ** r


def finite_level_symmetry(
    n: int, r: int, w1: int, w2: int, x: int, ctx: PadicContext, N: int
) -> SymmetryCheck:
    """Exact equality of the two finite double digit sums at level N.

    The two sums enumerate the same terms with the digit blocks swapped,
    so equality exercises the summation machinery rather than any limit.
    """
    _check_level(ctx, N, r)
    if min(n, x) < 0 or min(r, w1, w2) < 1:
        raise ValueError("invalid parameters")
    lhs = _digit_double_sum(n, r, w1, w2, x, ctx, N)
    rhs = _digit_double_sum(n, r, w2, w1, x, ctx, N)
    return SymmetryCheck(lhs, rhs)


# ---------------------------------------------------------------------------
# convergence reporting helpers
# ---------------------------------------------------------------------------


def valuations_against(values: Sequence[Fraction], target: Fraction, p: int) -> list[Valuation]:
    """vp(value - target) for each truncation level's value."""
    return [vp(v - target, p) for v in values]


def nondecreasing_with_gain(vals: Sequence[Valuation], gain: int = 2) -> bool:
    """True when the valuation sequence never drops and ends gain higher."""
    if not vals:
        return False
    if any(b < a for a, b in zip(vals, vals[1:])):
        return False
    return vals[-1] >= vals[0] + gain
