"""q-numbers, Stirling numbers of the first kind, generalized falling
factorials, Bernoulli numbers of the second kind, and the symmetric
T-sums that appear in the base-swap identities.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from . import series
from .algebra import PolyQ, RationalFunctionQ

__all__ = [
    "QExponentArg",
    "q_number",
    "stirling1",
    "falling_factorial_expand",
    "bernoulli_second_kind",
    "t_sum",
    "composition_counts",
    "clear_caches",
]


@dataclass(frozen=True)
class QExponentArg:
    """Argument x = e/w read in base q**w, so q**(w*x) is exactly q**e.

    The encoding keeps every exponent of q integral: the bracket
    [x]_{q**w} is (1 - q**e) / (1 - q**w), and fractional arguments like
    j/w stay legal as long as w*x is an integer.
    """

    e: int
    w: int = 1

    def __post_init__(self):
        if self.w < 1:
            raise ValueError("base multiplier w must be >= 1")
        if self.e < 0:
            raise ValueError("exponent e must be nonnegative")

    @classmethod
    def of_int(cls, x: int, w: int = 1) -> "QExponentArg":
        """Plain integer argument x in base q**w."""
        if x < 0:
            raise ValueError("integer argument must be nonnegative")
        return cls(x * w, w)

    @property
    def value(self) -> Fraction:
        return Fraction(self.e, self.w)


def q_number(arg: QExponentArg) -> RationalFunctionQ:
    """[x]_{q**w} = (1 - q**e)/(1 - q**w) for x = e/w."""
    return RationalFunctionQ(PolyQ.one_minus_qpow(arg.e), PolyQ.one_minus_qpow(arg.w))


# ---------------------------------------------------------------------------
# Stirling numbers of the first kind (signed convention)
# ---------------------------------------------------------------------------

# rows of the signed triangle: x(x-1)...(x-n+1) = sum_l S1(n,l) x**l
_stirling_rows: list[tuple[int, ...]] = [(1,)]
_stirling_lock = threading.Lock()


def _stirling_row(n: int) -> tuple[int, ...]:
    if n < len(_stirling_rows):
        return _stirling_rows[n]
    with _stirling_lock:
        while len(_stirling_rows) <= n:
            m = len(_stirling_rows) - 1
            prev = _stirling_rows[-1]
            row = [0] * (m + 2)
            for l in range(m + 2):
                above = prev[l - 1] if 1 <= l <= m + 1 else 0
                here = prev[l] if l <= m else 0
                row[l] = above - m * here
            _stirling_rows.append(tuple(row))
    return _stirling_rows[n]


def stirling1(n: int, l: int) -> int:
    """Signed Stirling number of the first kind S1(n, l).

    Satisfies S1(n+1, l) = S1(n, l-1) - n*S1(n, l) with S1(0, 0) = 1;
    out-of-range l returns 0.
    """
    if n < 0 or l < 0:
        raise ValueError("indices must be nonnegative")
    if l > n:
        return 0
    return _stirling_row(n)[l]


def falling_factorial_expand(n: int) -> tuple[int, ...]:
    """Coefficients (S1(n, l))_{l=0..n} of the generalized falling factorial.

    For any ring element y: y (y - lam) ... (y - (n-1) lam)
    = sum_l S1(n, l) lam**(n-l) y**l.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _stirling_row(n)


def bernoulli_second_kind(n: int) -> Fraction:
    """b_n with t / log(1+t) = sum b_n t**n / n!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # log(1+t)/t has plain coefficient (-1)**m / (m+1)
    denom = series.TruncatedSeries(n, [Fraction((-1) ** m, m + 1) for m in range(n + 1)])
    return Fraction(series.series_div(series.TruncatedSeries.one(n), denom).egf(n))


# ---------------------------------------------------------------------------
# symmetric T-sums
# ---------------------------------------------------------------------------

_counts_cache: dict[tuple[int, int], tuple[int, ...]] = {}


def composition_counts(w: int, r: int) -> tuple[int, ...]:
    """Number of r-tuples in [0, w)**r with each possible sum.

    Index s of the result counts the tuples (j_1, ..., j_r) with
    j_1 + ... + j_r = s; the sum ranges over 0..r*(w-1).
    """
    if w < 1 or r < 1:
        raise ValueError("w and r must be >= 1")
    key = (w, r)
    cached = _counts_cache.get(key)
    if cached is None:
        counts = [1] * w
        for _ in range(r - 1):
            nxt = [0] * (len(counts) + w - 1)
            for s, c in enumerate(counts):
                for j in range(w):
                    nxt[s + j] += c
            counts = nxt
        cached = tuple(counts)
        _counts_cache[key] = cached
    return cached


def t_sum(n: int, i: int, r: int, w: int, base_mult: int = 1) -> RationalFunctionQ:
    """T-sum over r-fold digit tuples in base q**base_mult.

    sum over j_1..j_r in [0, w): q**(m (n-i) (j_1+...+j_r)) *
    ([j_1+...+j_r]_{q**m})**i, with m = base_mult.  The i = 0 terms use
    the 0**0 = 1 convention, which the w = 1 degenerate case requires.
    The result is always a polynomial in q.
    """
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    if r < 1 or w < 1 or base_mult < 1:
        raise ValueError("r, w and base_mult must be >= 1")
    m = base_mult
    total = PolyQ()
    for s, cnt in enumerate(composition_counts(w, r)):
        if i == 0:
            bracket_pow = PolyQ((1,))
        elif s == 0:
            continue
        else:
            bracket = PolyQ([1 if k % m == 0 else 0 for k in range(m * (s - 1) + 1)])
            bracket_pow = bracket**i
        total = total + (bracket_pow * cnt).shift(m * (n - i) * s)
    return RationalFunctionQ(total, PolyQ((1,)))


def clear_caches() -> None:
    global _stirling_rows
    with _stirling_lock:
        _stirling_rows = [(1,)]
    _counts_cache.clear()
