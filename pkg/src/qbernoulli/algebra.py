"""Exact arithmetic kernels: integers polynomials in q, reduced rational
functions of q, and dense polynomials in a formal variable (lambda, x)
over any of those coefficient rings.

Canonical form of a rational function: numerator and denominator are
integer-coefficient polynomials with no common polynomial factor, the
integer contents of the two sides are coprime, and the denominator has a
positive leading coefficient.  Equality of values is then exactly
structural equality, so identity checking is a total decision procedure
rather than a probabilistic claim.

All values are immutable after construction and all operations are pure,
so everything here can be shared freely between threads.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "PoleError",
    "PolyQ",
    "RationalFunctionQ",
    "VarPoly",
    "normalize",
    "eval_at",
    "limit_at_q1",
    "lam_poly",
    "rf",
    "poly_gcd",
    "LAMBDA_VAR",
]

LAMBDA_VAR = "L"


class PoleError(ZeroDivisionError):
    """Denominator vanishes at the requested evaluation or limit point."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense coefficient lists, ascending powers)
# ---------------------------------------------------------------------------

_KRONECKER_MIN = 24


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Pack both polynomials into single big integers and let CPython's
    # native multiplication do the convolution.  Signed coefficients are
    # recovered digit-by-digit with a balanced representation, which is
    # valid because |every product coefficient| < 2**(bits-1).
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    bits = (amax.bit_length() + bmax.bit_length()
            + min(len(a), len(b)).bit_length() + 2)
    abig = sum(c << (bits * i) for i, c in enumerate(a) if c)
    bbig = sum(c << (bits * i) for i, c in enumerate(b) if c)
    prod = abig * bbig
    n = len(a) + len(b) - 1
    out = [0] * n
    half = 1 << (bits - 1)
    mask = (1 << bits) - 1
    for i in range(n):
        d = (prod & mask) - (((prod & mask) & half) << 1)
        out[i] = d
        prod = (prod - d) >> bits
    return out


def _mul_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _trim(_mul_schoolbook(a, b))
    return _trim(_mul_kronecker(a, b))


def _content(cs: Iterable[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


# -- arithmetic mod a word-sized prime, used by the modular GCD ------------


def _mod_reduce(cs: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in cs])


def _mod_rem(a: list[int], b: Sequence[int], p: int) -> list[int]:
    a = a[:]
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = c * inv % p
            off = i - db
            for j in range(db):
                a[off + j] = (a[off + j] - f * b[j]) % p
        a[i] = 0
    del a[db:]
    return _trim(a)


def _mod_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _mod_rem(a, b, p)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _is_probable_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3e24
    for b in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _gcd_primes() -> list[int]:
    primes = []
    n = (1 << 61) + 1
    while len(primes) < 64:
        if _is_probable_prime(n):
            primes.append(n)
        n += 2
    return primes


_PRIMES = _gcd_primes()


def _crt_pair(r1: list[int], m1: int, r2: list[int], m2: int) -> list[int]:
    inv = pow(m1, -1, m2)
    out = []
    for i in range(max(len(r1), len(r2))):
        a = r1[i] if i < len(r1) else 0
        b = r2[i] if i < len(r2) else 0
        out.append(a + m1 * ((b - a) * inv % m2))
    return out


def _sym_lift(cs: Sequence[int], m: int) -> list[int]:
    half = m // 2
    return _trim([c - m if c > half else c for c in cs])


def _try_exact_div(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """Quotient of a by b over Z, or None when b does not divide a."""
    if not a:
        return []
    if len(a) < len(b):
        return None
    rem = list(a)
    db = len(b) - 1
    lcb = b[-1]
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c:
            if c % lcb:
                return None
            f = c // lcb
            quot[i - db] = f
            off = i - db
            for j in range(db):
                rem[off + j] -= f * b[j]
        rem[i] = 0
    if any(rem):
        return None
    return quot


def _prs_gcd(a: list[int], b: list[int]) -> list[int]:
    # subresultant pseudo-remainder sequence; fallback when the modular
    # loop runs out of primes (practically unreachable)
    def pseudo_rem(f, g):
        f = f[:]
        dg = len(g) - 1
        lcg = g[-1]
        while len(f) - 1 >= dg and f:
            k = len(f) - 1 - dg
            lcf = f[-1]
            f = [c * lcg for c in f]
            for j in range(len(g)):
                f[k + j] -= lcf * g[j]
            f = _trim(f)
        return f

    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        c = _content(r)
        a, b = b, ([x // c for x in r] if c > 1 else r)
    c = _content(a)
    a = [x // c for x in a]
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a


def _poly_gcd_int(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive positive-leading gcd of two nonzero integer polynomials.

    Modular images with CRT lifting; a candidate is accepted once it
    divides both inputs over Z, so the result is certified exact.
    """
    ca = _content(a)
    cb = _content(b)
    pa = [c // ca for c in a]
    pb = [c // cb for c in b]
    if len(pa) == 1 or len(pb) == 1:
        return [1]
    glc = math.gcd(pa[-1], pb[-1])
    best_deg: int | None = None
    acc: list[int] = []
    mod = 1
    for p in _PRIMES:
        if pa[-1] % p == 0 or pb[-1] % p == 0:
            continue
        gp = _mod_gcd(_mod_reduce(pa, p), _mod_reduce(pb, p), p)
        d = len(gp) - 1
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            acc = [glc * c % p for c in gp]
            mod = p
        elif d == best_deg:
            acc = _crt_pair(acc, mod, [glc * c % p for c in gp], p)
            mod *= p
        else:
            continue  # unlucky prime
        cand = _sym_lift(acc, mod)
        cc = _content(cand)
        if cc > 1:
            cand = [c // cc for c in cand]
        if cand and cand[-1] < 0:
            cand = [-c for c in cand]
        if _try_exact_div(pa, cand) is not None and _try_exact_div(pb, cand) is not None:
            return cand
    return _prs_gcd(pa, pb)


# ---------------------------------------------------------------------------
# PolyQ
# ---------------------------------------------------------------------------


class PolyQ:
    """Dense polynomial in the indeterminate q with integer coefficients.

    coeffs[k] is the coefficient of q**k; the zero polynomial is the
    empty tuple.  Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"PolyQ coefficients must be int, got {type(c).__name__}")
        object.__setattr__(self, "coeffs", tuple(_trim(cs)))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("PolyQ is immutable")

    # -- constructors --

    @classmethod
    def const(cls, c: int) -> "PolyQ":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "PolyQ":
        if k < 0:
            raise ValueError("monomial exponent must be nonnegative")
        return cls((0,) * k + (c,))

    @classmethod
    def one_minus_qpow(cls, m: int) -> "PolyQ":
        """1 - q**m (the building block of every q-number)."""
        if m == 0:
            return cls()
        return cls((1,) + (0,) * (m - 1) + (-1,))

    # -- basic queries --

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    # -- ring operations --

    def __add__(self, other):
        if isinstance(other, int):
            other = PolyQ.const(other)
        elif not isinstance(other, PolyQ):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = PolyQ.const(other)
        elif not isinstance(other, PolyQ):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return PolyQ()
            return PolyQ(tuple(other * c for c in self.coeffs))
        if not isinstance(other, PolyQ):
            return NotImplemented
        return PolyQ(_mul_int(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("PolyQ power must be nonnegative")
        result = PolyQ.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shift(self, k: int) -> "PolyQ":
        """Multiply by q**k."""
        if self.is_zero or k == 0:
            return self if k >= 0 else self
        return PolyQ((0,) * k + self.coeffs)

    def subst_pow(self, w: int) -> "PolyQ":
        """Substitute q -> q**w."""
        if w < 1:
            raise ValueError("substitution power must be >= 1")
        if w == 1 or self.is_zero:
            return self
        out = [0] * (self.degree * w + 1)
        for i, c in enumerate(self.coeffs):
            out[i * w] = c
        return PolyQ(out)

    # -- content and division --

    def split_content(self) -> tuple[int, "PolyQ"]:
        """(positive content, primitive part); sign stays in the part."""
        if self.is_zero:
            return 0, self
        c = _content(self.coeffs)
        if c == 1:
            return 1, self
        return c, PolyQ(tuple(x // c for x in self.coeffs))

    def exact_div(self, other: "PolyQ") -> "PolyQ":
        q = _try_exact_div(self.coeffs, other.coeffs)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return PolyQ(q)

    def divides(self, other: "PolyQ") -> bool:
        if other.is_zero:
            return True
        return _try_exact_div(other.coeffs, self.coeffs) is not None

    # -- evaluation --

    def __call__(self, q0: Scalar) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def q1_multiplicity(self) -> int:
        """Order of vanishing at q = 1."""
        if self.is_zero:
            return 0
        k = 0
        cur = list(self.coeffs)
        while sum(cur) == 0:
            # synthetic division by (q - 1)
            out = [0] * (len(cur) - 1)
            carry = 0
            for i in range(len(cur) - 1, 0, -1):
                carry += cur[i]
                out[i - 1] = carry
            cur = _trim(out)
            k += 1
            if not cur:
                break
        return k

    def div_q_minus_1(self, times: int = 1) -> "PolyQ":
        cur = self
        for _ in range(times):
            cur = cur.exact_div(PolyQ((-1, 1)))
        return cur

    # -- comparisons, hashing, display --

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (() if other == 0 else (other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                term = str(c)
            else:
                var = "q" if k == 1 else f"q^{k}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = "-" + var
                else:
                    term = f"{c}*{var}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += term if term.startswith("-") else "+" + term
        return out

    def __repr__(self):
        return f"PolyQ({list(self.coeffs)!r})"


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Primitive gcd (positive leading coefficient) of the polynomial parts."""
    if a.is_zero:
        _, p = b.split_content()
        return -p if p.leading < 0 else p
    if b.is_zero:
        _, p = a.split_content()
        return -p if p.leading < 0 else p
    return PolyQ(_poly_gcd_int(a.coeffs, b.coeffs))


# ---------------------------------------------------------------------------
# RationalFunctionQ
# ---------------------------------------------------------------------------


def _coerce_poly(p) -> PolyQ:
    if isinstance(p, PolyQ):
        return p
    if isinstance(p, int):
        return PolyQ.const(p)
    # sequence of int / Fraction: clear denominators and remember the scale
    raise TypeError(f"cannot interpret {type(p).__name__} as a polynomial in q")


def _clear_fractions(coeffs: Sequence[Scalar]) -> tuple[PolyQ, int]:
    """Integer polynomial plus the positive denominator that was cleared."""
    lcm = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        elif not isinstance(c, int):
            raise TypeError("polynomial coefficients must be int or Fraction")
    ints = [int(c * lcm) if isinstance(c, Fraction) else c * lcm for c in coeffs]
    return PolyQ(ints), lcm


class RationalFunctionQ:
    """Reduced ratio of integer polynomials in q (canonical representative).

    Invariants: the denominator is nonzero with positive leading
    coefficient, numerator and denominator share no polynomial factor,
    and their integer contents are coprime.  Zero is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=PolyQ((1,))):
        if not isinstance(num, PolyQ) or not isinstance(den, PolyQ):
            raise TypeError("RationalFunctionQ takes PolyQ numerator and denominator")
        n, d = _normalize_pair(num, den)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RationalFunctionQ is immutable")

    @classmethod
    def _raw(cls, num: PolyQ, den: PolyQ) -> "RationalFunctionQ":
        """Trusted constructor: inputs must already be canonical."""
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    @classmethod
    def from_scalar(cls, c: Scalar) -> "RationalFunctionQ":
        if isinstance(c, int):
            return cls._raw(PolyQ.const(c) if c else PolyQ(), PolyQ((1,)))
        if isinstance(c, Fraction):
            num = PolyQ.const(c.numerator) if c.numerator else PolyQ()
            return cls._raw(num, PolyQ.const(c.denominator))
        raise TypeError(f"cannot convert {type(c).__name__} to RationalFunctionQ")

    @classmethod
    def from_coeffs(cls, num: Sequence[Scalar], den: Sequence[Scalar] = (1,)) -> "RationalFunctionQ":
        pn, sn = _clear_fractions(num)
        pd, sd = _clear_fractions(den)
        return cls(pn * sd, pd * sn)

    # -- queries --

    def __bool__(self):
        return not self.num.is_zero

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def is_one(self) -> bool:
        return self.num.coeffs == (1,) and self.den.coeffs == (1,)

    def as_fraction(self) -> Fraction:
        """Constant rational functions back to a Fraction."""
        if self.num.degree > 0 or self.den.degree > 0:
            raise ValueError("rational function is not constant")
        return Fraction(self.num.coeff(0), self.den.coeff(0))

    # -- arithmetic --

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunctionQ):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunctionQ.from_scalar(other)
        if isinstance(other, PolyQ):
            return RationalFunctionQ._raw(*_canonical_content(other, PolyQ((1,))))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        if self.den == o.den:
            return RationalFunctionQ(self.num + o.num, self.den)
        g0 = poly_gcd(self.den, o.den)
        if g0.degree < 1:
            num = self.num * o.den + o.num * self.den
            den = self.den * o.den
            return RationalFunctionQ._raw(*_canonical_content(num, den))
        d1r = self.den.exact_div(g0)
        d2r = o.den.exact_div(g0)
        num = self.num * d2r + o.num * d1r
        g1 = poly_gcd(num, g0)
        den = d1r * o.den
        if g1.degree >= 1:
            num = num.exact_div(g1)
            den = den.exact_div(g1)
        return RationalFunctionQ._raw(*_canonical_content(num, den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return RF_ZERO
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = self.num.exact_div(g1) if g1.degree >= 1 else self.num
        d2 = o.den.exact_div(g1) if g1.degree >= 1 else o.den
        n2 = o.num.exact_div(g2) if g2.degree >= 1 else o.num
        d1 = self.den.exact_div(g2) if g2.degree >= 1 else self.den
        return RationalFunctionQ._raw(*_canonical_content(n1 * n2, d1 * d2))

    __rmul__ = __mul__

    def inv(self) -> "RationalFunctionQ":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunctionQ._raw(*_canonical_content(self.den, self.num))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k == 0:
            return RF_ONE
        if k < 0:
            return self.inv() ** (-k)
        # coprimality survives powering, so only the content pass is needed
        return RationalFunctionQ._raw(*_canonical_content(self.num**k, self.den**k))

    # -- q-substitution and evaluation --

    def subst_pow(self, w: int) -> "RationalFunctionQ":
        """Substitute q -> q**w; canonical form is preserved."""
        if w == 1:
            return self
        return RationalFunctionQ._raw(self.num.subst_pow(w), self.den.subst_pow(w))

    def eval_at(self, q0: Scalar) -> Fraction:
        d = self.den(q0)
        if d == 0:
            raise PoleError(f"denominator vanishes at q = {q0}")
        return Fraction(self.num(q0)) / Fraction(d)

    def limit_q1(self) -> Fraction:
        num, den = self.num, self.den
        k = min(num.q1_multiplicity(), den.q1_multiplicity())
        if k:  # cannot happen for canonical values, kept for raw pairs
            num = num.div_q_minus_1(k)
            den = den.div_q_minus_1(k)
        d = den(1)
        if d == 0:
            raise PoleError("pole at q = 1")
        return Fraction(num(1), d)

    # -- comparisons, hashing, display --

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num.coeffs == o.num.coeffs and self.den.coeffs == o.den.coeffs

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __str__(self):
        if self.den.coeffs == (1,):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunctionQ({self})"


def _canonical_content(num: PolyQ, den: PolyQ) -> tuple[PolyQ, PolyQ]:
    """Content/sign canonicalization of an already poly-coprime pair."""
    if num.is_zero:
        return PolyQ(), PolyQ((1,))
    cn, pn = num.split_content()
    cd, pd = den.split_content()
    if pd.leading < 0:
        pn, pd = -pn, -pd
    c = Fraction(cn, cd)
    return pn * c.numerator, pd * c.denominator


def _normalize_pair(num: PolyQ, den: PolyQ) -> tuple[PolyQ, PolyQ]:
    if den.is_zero:
        raise ZeroDivisionError("zero denominator in rational function")
    if num.is_zero:
        return PolyQ(), PolyQ((1,))
    if num.degree >= 1 and den.degree >= 1:
        g = poly_gcd(num, den)
        if g.degree >= 1:
            num = num.exact_div(g)
            den = den.exact_div(g)
    return _canonical_content(num, den)


RF_ZERO = RationalFunctionQ._raw(PolyQ(), PolyQ((1,)))
RF_ONE = RationalFunctionQ._raw(PolyQ((1,)), PolyQ((1,)))
RF_Q = RationalFunctionQ._raw(PolyQ((0, 1)), PolyQ((1,)))


def rf(num, den=(1,)) -> RationalFunctionQ:
    """Convenience builder from coefficient sequences, ints or Fractions."""
    if isinstance(num, (int, Fraction)) and den == (1,):
        return RationalFunctionQ.from_scalar(num)
    num_seq = num.coeffs if isinstance(num, PolyQ) else num
    den_seq = den.coeffs if isinstance(den, PolyQ) else den
    return RationalFunctionQ.from_coeffs(num_seq, den_seq)


# -- spec-level operation names ---------------------------------------------


def normalize(num, den) -> RationalFunctionQ:
    """Canonical reduced rational function num/den.

    normalize(a, b) == normalize(c, d) exactly when a*d == b*c as
    polynomials.  Raises ZeroDivisionError when den is zero.
    """
    pn, sn = _clear_and_pair(num)
    pd, sd = _clear_and_pair(den)
    return RationalFunctionQ(pn * sd, pd * sn)


def _clear_and_pair(value) -> tuple[PolyQ, int]:
    if isinstance(value, PolyQ):
        return value, 1
    if isinstance(value, (int, Fraction)):
        value = (value,)
    return _clear_fractions(list(value))


def eval_at(f: RationalFunctionQ, q0: Scalar) -> Fraction:
    """Exact value of f at a rational point; PoleError when undefined."""
    return f.eval_at(q0)


def limit_at_q1(f: RationalFunctionQ) -> Fraction:
    """Limit of f as q -> 1, cancelling any removable (q-1) powers."""
    return f.limit_q1()


# ---------------------------------------------------------------------------
# VarPoly: dense polynomial in one formal variable over a duck-typed ring
# ---------------------------------------------------------------------------


class VarPoly:
    """Polynomial in a named formal variable with ring-element coefficients.

    Coefficients may be int, Fraction, RationalFunctionQ, or another
    VarPoly in a different variable (nested rings).  Binary operations
    between polynomials in the same variable act coefficient-wise;
    anything else is treated as a scalar.  The variable "L" stands for
    the degenerate parameter lambda throughout the package.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("VarPoly is immutable")

    @classmethod
    def variable(cls, var: str, one=1) -> "VarPoly":
        return cls(var, (one * 0, one))

    @classmethod
    def const(cls, var: str, c) -> "VarPoly":
        return cls(var, (c,))

    # -- queries --

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    # -- arithmetic --

    def _is_peer(self, other) -> bool:
        return isinstance(other, VarPoly) and other.var == self.var

    def _defers_to(self, other) -> bool:
        # nesting order: "L" (lambda) is the innermost formal variable, any
        # other variable wraps around it; mixed operations hand control to
        # the outer ring so coefficients always nest the same way
        if not isinstance(other, VarPoly) or other.var == self.var:
            return False
        if self.var == LAMBDA_VAR:
            return True
        if other.var == LAMBDA_VAR:
            return False
        raise TypeError(f"ambiguous variable nesting: {self.var!r} vs {other.var!r}")

    def __add__(self, other):
        if self._defers_to(other):
            return other.__add__(self)
        if self._is_peer(other):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] + c
            return VarPoly(self.var, out)
        if not self.coeffs:
            return VarPoly(self.var, (other,))
        out = list(self.coeffs)
        out[0] = out[0] + other
        return VarPoly(self.var, out)

    __radd__ = __add__

    def __neg__(self):
        return VarPoly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if self._defers_to(other):
            return (-other).__add__(self)
        if self._is_peer(other):
            return self + (-other)
        return self + (-1 * other if not isinstance(other, int) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._defers_to(other):
            return other.__mul__(self)
        if self._is_peer(other):
            if not self.coeffs or not other.coeffs:
                return VarPoly(self.var)
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] = out[i + j] + a * b
            return VarPoly(self.var, out)
        if isinstance(other, int) and other == 0:
            return VarPoly(self.var)
        return VarPoly(self.var, tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if self._is_peer(other):
            if other.degree == 0:
                return self / other.coeffs[0]
            raise ArithmeticError("division only by constant polynomials")
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return self * Fraction(other.denominator, other.numerator)
        if isinstance(other, RationalFunctionQ):
            return self * other.inv()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("VarPoly power must be nonnegative")
        result = VarPoly(self.var, (1,))
        for _ in range(k):
            result = result * self
        return result

    # -- structure --

    def map_coeffs(self, fn) -> "VarPoly":
        return VarPoly(self.var, tuple(fn(c) for c in self.coeffs))

    def __call__(self, value):
        """Substitute a value for the variable (Horner)."""
        if not self.coeffs:
            return 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    # -- comparisons, hashing, display --

    def __eq__(self, other):
        if self._is_peer(other):
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        if isinstance(other, VarPoly):
            # different variables: equal only through constant unwrapping
            if self.degree <= 0:
                return self.constant_term() == other
            if other.degree <= 0:
                return self == other.constant_term()
            return False
        # scalar comparison
        if not self.coeffs:
            return not other
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            head = f"({c})"
            if k == 1:
                head += f"*{self.var}"
            elif k > 1:
                head += f"*{self.var}^{k}"
            parts.append(head)
        return "+".join(parts)

    def __repr__(self):
        return f"VarPoly({self.var!r}, {list(self.coeffs)!r})"


def lam_poly(coeffs: Iterable) -> VarPoly:
    """Polynomial in the degenerate parameter lambda."""
    return VarPoly(LAMBDA_VAR, coeffs)
