"""Identity harness: decides each symmetric identity exactly at fixed
parameters and over parameter grids, producing machine-readable reports.

Every check is an equality of canonical rational functions in q or of
polynomials in lambda with such coefficients, so "pass" means the
identity holds at those parameters, full stop.  A fail report embeds
both normalized sides, which is the most useful artifact the harness
can produce.

The thm3 and cor_lambda0 checkers implement the stated source form of
those identities, whose bracket-power exponent n+l-r-i (2n-r-i in the
corollary) makes the two sides differ by the n-th power of [w1]_q
versus [w2]_q; they fail whenever w1 != w2 and n >= 1.  The *_fixed
variants use the exponent l-r-i (n-r-i) that the derivation through the
double digit sums actually yields, and those pass on the full grids.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import get_context
from typing import Optional, Sequence, Union

from . import qcore
from .algebra import LAMBDA_VAR, PolyQ, RationalFunctionQ, VarPoly
from .padic import PadicContext, WorkBudgetError, finite_level_symmetry
from .qbern import LambdaScaling, QBernParams, degenerate_higher_beta, higher_beta
from .qcore import QExponentArg, composition_counts, q_number, t_sum
from . import series

__all__ = [
    "IdentityReport",
    "GridBounds",
    "IDENTITY_IDS",
    "verify_thm2",
    "verify_thm3",
    "verify_thm3_fixed",
    "verify_cor_lambda0",
    "verify_cor_lambda0_fixed",
    "verify_eq31",
    "verify_dist_formula",
    "verify_eq29",
    "verify_eq17",
    "verify_eq24_expand",
    "verify_finite_sym",
    "run_grid",
    "all_pass",
    "clear_caches",
]

_MAX_GRID_POINTS = 100_000


@dataclass
class IdentityReport:
    identity: str
    params: dict
    status: str
    lhs: str
    rhs: str
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass(frozen=True)
class GridBounds:
    n_max: int = 4
    r_max: int = 2
    w_max: int = 3
    x_max: int = 2

    def __post_init__(self):
        if self.n_max < 0 or self.r_max < 1 or self.w_max < 1 or self.x_max < 0:
            raise ValueError("bounds must satisfy n_max,x_max >= 0 and r_max,w_max >= 1")


def _finish(identity: str, params: dict, lhs, rhs, t0: float) -> IdentityReport:
    status = "pass" if lhs == rhs else "fail"
    return IdentityReport(
        identity, params, status, str(lhs), str(rhs), (time.perf_counter() - t0) * 1000.0
    )


def _bracket_rf(w: int) -> RationalFunctionQ:
    return q_number(QExponentArg.of_int(w))


# ---------------------------------------------------------------------------
# sides of the main theorems
# ---------------------------------------------------------------------------

_side_cache: dict[tuple, VarPoly] = {}


def _swap_side(n: int, r: int, wa: int, wb: int, x: int) -> VarPoly:
    """[wa]^(n-r) * sum over digit tuples j of q^(wb Sj) times the
    degenerate family at argument wb*x + (wb/wa) Sj in base q^wa with
    lambda scaled by 1/[wa]_q."""
    key = (n, r, wa, wb, x)
    cached = _side_cache.get(key)
    if cached is not None:
        return cached
    scaling = LambdaScaling.inverse_bracket(wa)
    acc = VarPoly(LAMBDA_VAR)
    for j_sum, cnt in enumerate(composition_counts(wa, r)):
        arg = QExponentArg(wa * wb * x + wb * j_sum, wa)
        beta = degenerate_higher_beta(QBernParams(n, r, arg, wa, scaling))
        weight = RationalFunctionQ(PolyQ.monomial(wb * j_sum, cnt), PolyQ((1,)))
        acc = acc + beta * weight
    result = acc * _bracket_rf(wa) ** (n - r)
    _side_cache[key] = result
    return result


def verify_thm2(n: int, r: int, w1: int, w2: int, x: int) -> IdentityReport:
    """Base-swap symmetry of the degenerate higher-order family."""
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": w2, "x": x}
    lhs = _swap_side(n, r, w1, w2, x)
    rhs = _swap_side(n, r, w2, w1, x)
    return _finish("thm2", params, lhs, rhs, t0)


def _stirling_t_side(n: int, r: int, wa: int, wb: int, x: int, stated: bool) -> VarPoly:
    """Stirling/T-sum expansion side; stated=True keeps the source
    exponent n+l-r-i, stated=False the derivable l-r-i."""
    ba = _bracket_rf(wa)
    bb = _bracket_rf(wb)
    coeffs: list[RationalFunctionQ] = [RationalFunctionQ.from_scalar(0)] * (n + 1)
    for l in range(n + 1):
        s1 = qcore.stirling1(n, l)
        if s1 == 0:
            continue
        inner = RationalFunctionQ.from_scalar(0)
        for i in range(l + 1):
            expo = (n + l - r - i) if stated else (l - r - i)
            term = (
                higher_beta(l - i, r, QExponentArg.of_int(wb * x, wa))
                * t_sum(l + 1, i, r, wa, base_mult=wb)
                * ba**expo
                * bb**i
                * math.comb(l, i)
            )
            inner = inner + term
        coeffs[n - l] = inner * s1
    return VarPoly(LAMBDA_VAR, coeffs)


def verify_thm3(n: int, r: int, w1: int, w2: int, x: int) -> IdentityReport:
    """Stirling/T-sum symmetric identity in its stated form."""
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": w2, "x": x}
    lhs = _stirling_t_side(n, r, w1, w2, x, stated=True)
    rhs = _stirling_t_side(n, r, w2, w1, x, stated=True)
    return _finish("thm3", params, lhs, rhs, t0)


def verify_thm3_fixed(n: int, r: int, w1: int, w2: int, x: int) -> IdentityReport:
    """Stirling/T-sum symmetric identity with the corrected exponent."""
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": w2, "x": x}
    lhs = _stirling_t_side(n, r, w1, w2, x, stated=False)
    rhs = _stirling_t_side(n, r, w2, w1, x, stated=False)
    return _finish("thm3_fixed", params, lhs, rhs, t0)


def _cor_side(n: int, r: int, wa: int, wb: int, x: int, stated: bool) -> RationalFunctionQ:
    ba = _bracket_rf(wa)
    bb = _bracket_rf(wb)
    acc = RationalFunctionQ.from_scalar(0)
    for i in range(n + 1):
        expo = (2 * n - r - i) if stated else (n - r - i)
        term = (
            higher_beta(n - i, r, QExponentArg.of_int(wb * x, wa))
            * t_sum(n + 1, i, r, wa, base_mult=wb)
            * ba**expo
            * bb**i
            * math.comb(n, i)
        )
        acc = acc + term
    return acc


def verify_cor_lambda0(n: int, r: int, w1: int, w2: int, x: int) -> IdentityReport:
    """lambda -> 0 corollary of the Stirling/T-sum identity, stated form."""
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": w2, "x": x}
    lhs = _cor_side(n, r, w1, w2, x, stated=True)
    rhs = _cor_side(n, r, w2, w1, x, stated=True)
    return _finish("cor_lambda0", params, lhs, rhs, t0)


def verify_cor_lambda0_fixed(n: int, r: int, w1: int, w2: int, x: int) -> IdentityReport:
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": w2, "x": x}
    lhs = _cor_side(n, r, w1, w2, x, stated=False)
    rhs = _cor_side(n, r, w2, w1, x, stated=False)
    return _finish("cor_lambda0_fixed", params, lhs, rhs, t0)


def verify_eq31(n: int, r: int, w1: int, x: int) -> IdentityReport:
    """Distribution form: the w2 = 1 swap side against the plain family."""
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": 1, "x": x}
    lhs = _swap_side(n, r, w1, 1, x)
    rhs = degenerate_higher_beta(
        QBernParams(n, r, QExponentArg.of_int(w1 * x), 1, LambdaScaling.unit())
    )
    return _finish("eq31", params, lhs, rhs, t0)


def verify_dist_formula(n: int, r: int, w1: int, x: int) -> IdentityReport:
    """Non-degenerate distribution formula over residue digits."""
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": 1, "x": x}
    lhs = higher_beta(n, r, QExponentArg.of_int(w1 * x))
    acc = RationalFunctionQ.from_scalar(0)
    for j_sum, cnt in enumerate(composition_counts(w1, r)):
        beta = higher_beta(n, r, QExponentArg(w1 * x + j_sum, w1))
        acc = acc + beta * RationalFunctionQ(PolyQ.monomial(j_sum, cnt), PolyQ((1,)))
    rhs = acc * _bracket_rf(w1) ** (n - r)
    return _finish("dist_formula", params, lhs, rhs, t0)


def verify_eq29(
    x: int, j: Sequence[int], y: Sequence[int], w1: int, w2: int, r: int
) -> IdentityReport:
    """Rebasing law for the q-bracket of the combined digit argument."""
    t0 = time.perf_counter()
    if len(j) != r or len(y) != r:
        raise ValueError("j and y must have length r")
    params = {
        "n": 0, "r": r, "w1": w1, "w2": w2, "x": x,
        "j": list(j), "y": list(y),
    }
    e = w1 * w2 * x + w2 * sum(j) + w1 * sum(y)
    lhs = q_number(QExponentArg(e, 1))
    rhs = _bracket_rf(w1) * q_number(QExponentArg(e, w1))
    return _finish("eq29", params, lhs, rhs, t0)


def verify_eq17(n: int, x: Union[int, Fraction, VarPoly] = 0) -> IdentityReport:
    """Carlitz-vs-fully-degenerate bridge through the second-kind numbers."""
    t0 = time.perf_counter()
    x_label = "x" if isinstance(x, VarPoly) else str(x)
    params = {"n": n, "r": 1, "w1": 1, "w2": 1, "x": x_label}
    lhs = series.degenerate_bernoulli_carlitz(n, x)
    # seed the sum with the l = 0 term so the accumulator picks up the
    # right outer variable in symbolic mode
    rhs: Optional[VarPoly] = None
    for l in range(n + 1):
        b_l = qcore.bernoulli_second_kind(l)
        if not b_l:
            continue
        kim = series.degenerate_bernoulli_kim(n - l, x)
        shift = VarPoly(LAMBDA_VAR, [0] * l + [Fraction(math.comb(n, l)) * b_l])
        term = kim * shift
        rhs = term if rhs is None else rhs + term
    return _finish("eq17", params, lhs, rhs, t0)


def verify_eq24_expand(n: int, e: int, w: int = 1) -> IdentityReport:
    """Falling factorial of a q-bracket versus its Stirling expansion."""
    t0 = time.perf_counter()
    params = {"n": n, "r": 1, "w1": w, "w2": 1, "x": e}
    y = q_number(QExponentArg(e, w))
    lam = VarPoly(LAMBDA_VAR, (0, RationalFunctionQ.from_scalar(1)))
    lhs: VarPoly = VarPoly(LAMBDA_VAR, (RationalFunctionQ.from_scalar(1),))
    for k in range(n):
        lhs = lhs * (y - k * lam)
    coeffs = [RationalFunctionQ.from_scalar(0)] * (n + 1)
    for l in range(n + 1):
        s1 = qcore.stirling1(n, l)
        if s1:
            coeffs[n - l] = y**l * s1
    rhs = VarPoly(LAMBDA_VAR, coeffs)
    return _finish("eq24_expand", params, lhs, rhs, t0)


def verify_finite_sym(
    n: int, r: int, w1: int, w2: int, x: int, ctx: PadicContext, N: int = 1
) -> IdentityReport:
    """Finite-level reindexing equality of the double digit sums."""
    t0 = time.perf_counter()
    params = {"n": n, "r": r, "w1": w1, "w2": w2, "x": x, "p": ctx.p, "N": N}
    check = finite_level_symmetry(n, r, w1, w2, x, ctx, N)
    return _finish("finite_sym", params, check.lhs, check.rhs, t0)


# ---------------------------------------------------------------------------
# grid runner
# ---------------------------------------------------------------------------

IDENTITY_IDS = (
    "thm2",
    "thm3",
    "thm3_fixed",
    "cor_lambda0",
    "cor_lambda0_fixed",
    "eq31",
    "dist_formula",
    "eq29",
    "eq17",
    "eq24_expand",
    "finite_sym",
)


def _grid_points(identity: str, bounds: GridBounds, seed: int) -> list[tuple]:
    ns = range(bounds.n_max + 1)
    rs = range(1, bounds.r_max + 1)
    ws = range(1, bounds.w_max + 1)
    xs = range(bounds.x_max + 1)
    if identity in ("thm2", "thm3", "thm3_fixed", "cor_lambda0", "cor_lambda0_fixed", "finite_sym"):
        return [(n, r, w1, w2, x) for n in ns for r in rs for w1 in ws for w2 in ws for x in xs]
    if identity in ("eq31", "dist_formula"):
        return [(n, r, w1, x) for n in ns for r in rs for w1 in ws for x in xs]
    if identity == "eq17":
        return [(n, x) for n in ns for x in xs]
    if identity == "eq24_expand":
        return [(n, e, w) for n in ns for e in xs for w in ws]
    if identity == "eq29":
        rng = random.Random(seed)
        pts = set()
        while len(pts) < 200:
            r = rng.randint(1, bounds.r_max)
            pts.add(
                (
                    rng.randint(0, bounds.x_max),
                    tuple(rng.randint(0, 3) for _ in range(r)),
                    tuple(rng.randint(0, 3) for _ in range(r)),
                    rng.randint(1, bounds.w_max),
                    rng.randint(1, bounds.w_max),
                    r,
                )
            )
        return sorted(pts)
    raise ValueError(f"unknown identity id: {identity}")


def _run_point(task: tuple) -> IdentityReport:
    identity, point, ctx = task
    if identity == "thm2":
        return verify_thm2(*point)
    if identity == "thm3":
        return verify_thm3(*point)
    if identity == "thm3_fixed":
        return verify_thm3_fixed(*point)
    if identity == "cor_lambda0":
        return verify_cor_lambda0(*point)
    if identity == "cor_lambda0_fixed":
        return verify_cor_lambda0_fixed(*point)
    if identity == "eq31":
        return verify_eq31(*point)
    if identity == "dist_formula":
        return verify_dist_formula(*point)
    if identity == "eq29":
        return verify_eq29(*point)
    if identity == "eq17":
        return verify_eq17(*point)
    if identity == "eq24_expand":
        return verify_eq24_expand(*point)
    if identity == "finite_sym":
        return verify_finite_sym(*point, ctx=ctx, N=1)
    raise ValueError(f"unknown identity id: {identity}")


def run_grid(
    identity: str,
    bounds: GridBounds,
    jobs: int = 1,
    ctx: Optional[PadicContext] = None,
    seed: int = 0,
) -> list[IdentityReport]:
    """Run one identity over its parameter grid.

    Reports come back in lexicographic parameter order regardless of the
    level of parallelism, so serialized output is reproducible.
    """
    if identity not in IDENTITY_IDS:
        raise ValueError(f"unknown identity id: {identity}")
    if identity == "finite_sym" and ctx is None:
        ctx = PadicContext.default(3)
    points = _grid_points(identity, bounds, seed)
    if len(points) > _MAX_GRID_POINTS:
        raise WorkBudgetError(
            f"grid of {len(points)} points exceeds the {_MAX_GRID_POINTS} budget"
        )
    tasks = [(identity, p, ctx) for p in points]
    if jobs <= 1 or len(tasks) < 2:
        reports = [_run_point(t) for t in tasks]
    else:
        with get_context("fork").Pool(jobs) as pool:
            reports = pool.map(_run_point, tasks, chunksize=max(1, len(tasks) // (jobs * 4)))
    return reports


def all_pass(reports: Sequence[IdentityReport]) -> bool:
    return all(rep.status == "pass" for rep in reports)


def clear_caches() -> None:
    _side_cache.clear()
