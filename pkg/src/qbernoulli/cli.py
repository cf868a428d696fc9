"""Command-line front end: family tables, identity verification grids,
and p-adic truncation checks, emitted as JSON or CSV.

Exit codes: 0 when every computation or check passed, 1 when at least
one identity or convergence check failed (reports are still emitted),
2 for usage, parse, or resource errors.

Serialized values use the canonical forms from the algebra layer, so
two runs over the same grid produce byte-identical output; timing is
opt-in via --timing precisely to keep the default reproducible.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import qbern, qcore, padic, series, verify
from .algebra import LAMBDA_VAR, PoleError, PolyQ, RationalFunctionQ, VarPoly
from .padic import PadicContext, WorkBudgetError
from .qbern import LambdaScaling, QBernParams
from .qcore import QExponentArg
from .verify import GridBounds, IdentityReport

__all__ = [
    "main",
    "serialize_report",
    "reports_to_json",
    "reports_to_csv",
    "parse_rational",
    "parse_int_poly",
    "parse_rational_function",
    "parse_lambda_poly",
]

_PARAM_KEYS = ("n", "r", "w1", "w2", "x")


# ---------------------------------------------------------------------------
# canonical-string parsers (round-trip support)
# ---------------------------------------------------------------------------


def parse_rational(s: str, p: Optional[int] = None) -> Fraction:
    """Parse 'a/b', a plain integer, or the shorthand '1+p'."""
    s = s.strip()
    if s == "1+p":
        if p is None:
            raise ValueError("'1+p' needs a prime in context")
        return Fraction(1 + p)
    if "/" in s:
        a, b = s.split("/", 1)
        return Fraction(int(a), int(b))
    return Fraction(int(s))


def parse_int_poly(s: str) -> PolyQ:
    """Parse the canonical polynomial notation, e.g. '1-q+3*q^2'."""
    s = s.strip()
    if s == "0":
        return PolyQ()
    coeffs: dict[int, int] = {}
    pos, n = 0, len(s)
    while pos < n:
        sign = 1
        if s[pos] == "+":
            pos += 1
        elif s[pos] == "-":
            sign = -1
            pos += 1
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        coef = int(s[start:pos]) if pos > start else None
        if pos < n and s[pos] == "*":
            pos += 1
        k = 0
        if pos < n and s[pos] == "q":
            pos += 1
            k = 1
            if pos < n and s[pos] == "^":
                pos += 1
                start = pos
                while pos < n and s[pos].isdigit():
                    pos += 1
                if pos == start:
                    raise ValueError(f"malformed exponent in {s!r}")
                k = int(s[start:pos])
        elif coef is None:
            raise ValueError(f"malformed term at offset {start} in {s!r}")
        coeffs[k] = coeffs.get(k, 0) + sign * (1 if coef is None else coef)
    deg = max(coeffs)
    return PolyQ([coeffs.get(i, 0) for i in range(deg + 1)])


def parse_rational_function(s: str) -> RationalFunctionQ:
    """Parse '(num)/(den)' or a bare polynomial back into canonical form."""
    s = s.strip()
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        split = s.index(")/(")
        return RationalFunctionQ(parse_int_poly(s[1:split]), parse_int_poly(s[split + 3 : -1]))
    return RationalFunctionQ(parse_int_poly(s), PolyQ((1,)))


def _split_top_level(s: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_lambda_poly(s: str) -> VarPoly:
    """Parse '(c0)+(c1)*L+...' with rational-function coefficients."""
    s = s.strip()
    if s == "0":
        return VarPoly(LAMBDA_VAR)
    coeffs: dict[int, RationalFunctionQ] = {}
    for piece in _split_top_level(s, "+"):
        piece = piece.strip()
        if not piece.startswith("("):
            raise ValueError(f"malformed lambda-poly term {piece!r}")
        depth, idx = 0, 0
        for idx, ch in enumerate(piece):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    break
        coeff = parse_rational_function(piece[1:idx])
        rest = piece[idx + 1 :]
        if not rest:
            k = 0
        elif rest == f"*{LAMBDA_VAR}":
            k = 1
        elif rest.startswith(f"*{LAMBDA_VAR}^"):
            k = int(rest[len(LAMBDA_VAR) + 2 :])
        else:
            raise ValueError(f"malformed lambda power {rest!r}")
        coeffs[k] = coeff
    deg = max(coeffs)
    zero = RationalFunctionQ.from_scalar(0)
    return VarPoly(LAMBDA_VAR, [coeffs.get(i, zero) for i in range(deg + 1)])


# ---------------------------------------------------------------------------
# report serialization
# ---------------------------------------------------------------------------


def _report_dict(rep: IdentityReport, include_timing: bool) -> dict:
    params = {k: rep.params.get(k, 0) for k in _PARAM_KEYS}
    extra = {k: v for k, v in rep.params.items() if k not in _PARAM_KEYS}
    out = {"identity": rep.identity, "params": params}
    if extra:
        out["extra"] = {k: extra[k] for k in sorted(extra)}
    out["status"] = rep.status
    out["lhs"] = rep.lhs
    out["rhs"] = rep.rhs
    if include_timing:
        out["elapsed_ms"] = round(rep.elapsed_ms, 3)
    return out


def serialize_report(rep: IdentityReport, fmt: str = "json", include_timing: bool = False) -> str:
    if fmt == "json":
        return json.dumps(_report_dict(rep, include_timing), default=str)
    if fmt == "csv":
        buf = io.StringIO()
        _csv_writer(buf, include_timing).writerow(_csv_row(rep, include_timing))
        return buf.getvalue().rstrip("\r\n")
    raise ValueError(f"unknown format {fmt!r}")


def _csv_columns(include_timing: bool) -> list[str]:
    cols = ["identity", *_PARAM_KEYS, "extra", "status", "lhs", "rhs"]
    if include_timing:
        cols.append("elapsed_ms")
    return cols


def _csv_writer(buf, include_timing: bool):
    return csv.writer(buf, lineterminator="\n")


def _csv_row(rep: IdentityReport, include_timing: bool) -> list:
    extra = {k: v for k, v in rep.params.items() if k not in _PARAM_KEYS}
    row = [rep.identity]
    row.extend(rep.params.get(k, 0) for k in _PARAM_KEYS)
    row.append(json.dumps({k: extra[k] for k in sorted(extra)}, default=str) if extra else "")
    row.extend([rep.status, rep.lhs, rep.rhs])
    if include_timing:
        row.append(round(rep.elapsed_ms, 3))
    return row


def reports_to_json(reports: Sequence[IdentityReport], include_timing: bool = False) -> str:
    return json.dumps([_report_dict(r, include_timing) for r in reports], default=str, indent=1)


def reports_to_csv(reports: Sequence[IdentityReport], include_timing: bool = False) -> str:
    buf = io.StringIO()
    w = _csv_writer(buf, include_timing)
    w.writerow(_csv_columns(include_timing))
    for rep in reports:
        w.writerow(_csv_row(rep, include_timing))
    return buf.getvalue()


def _rows_to_output(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, default=str, indent=1)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(list(rows[0]))
        for row in rows:
            w.writerow(list(row.values()))
    return buf.getvalue()


# ---------------------------------------------------------------------------
# table subcommand
# ---------------------------------------------------------------------------

TABLE_FAMILIES = (
    "classical-bernoulli",
    "higher-bernoulli",
    "bernoulli-second-kind",
    "stirling1",
    "carlitz-beta",
    "carlitz-beta-poly",
    "higher-beta",
    "degenerate-higher-beta",
    "degenerate-bernoulli",
    "degenerate-bernoulli-carlitz",
    "higher-degenerate-bernoulli",
)


def _eval_lambda(pol: VarPoly, lam: Optional[Fraction]):
    if lam is None:
        return pol
    value = pol(lam)
    return value


def _table_rows(args) -> list[dict]:
    fam = args.family
    ns = range(args.n_max + 1)
    rs = range(1, args.r_max + 1)
    xs = range(args.x_max + 1)
    lam = None if args.lam is None else parse_rational(args.lam)
    rows: list[dict] = []
    if fam == "classical-bernoulli":
        for n in ns:
            for x in xs:
                rows.append({"n": n, "x": x, "value": str(series.classical_bernoulli(n, x))})
    elif fam == "higher-bernoulli":
        for n in ns:
            for r in rs:
                for x in xs:
                    rows.append({"n": n, "r": r, "x": x, "value": str(series.higher_bernoulli(n, r, x))})
    elif fam == "bernoulli-second-kind":
        for n in ns:
            rows.append({"n": n, "value": str(qcore.bernoulli_second_kind(n))})
    elif fam == "stirling1":
        for n in ns:
            for l in range(n + 1):
                rows.append({"n": n, "l": l, "value": str(qcore.stirling1(n, l))})
    elif fam == "carlitz-beta":
        for n in ns:
            rows.append({"n": n, "value": str(qbern.carlitz_beta(n))})
    elif fam == "carlitz-beta-poly":
        for n in ns:
            for x in xs:
                rows.append({"n": n, "x": x, "value": str(qbern.carlitz_beta_poly(n, QExponentArg.of_int(x)))})
    elif fam == "higher-beta":
        for n in ns:
            for r in rs:
                for x in xs:
                    rows.append({"n": n, "r": r, "x": x,
                                 "value": str(qbern.higher_beta(n, r, QExponentArg.of_int(x)))})
    elif fam == "degenerate-higher-beta":
        for n in ns:
            for r in rs:
                for x in xs:
                    pol = qbern.degenerate_higher_beta(
                        QBernParams(n, r, QExponentArg.of_int(x), 1, LambdaScaling.unit())
                    )
                    rows.append({"n": n, "r": r, "x": x, "value": str(_eval_lambda(pol, lam))})
    elif fam == "degenerate-bernoulli":
        for n in ns:
            for x in xs:
                rows.append({"n": n, "x": x, "value": str(_eval_lambda(series.degenerate_bernoulli_kim(n, x), lam))})
    elif fam == "degenerate-bernoulli-carlitz":
        for n in ns:
            for x in xs:
                rows.append({"n": n, "x": x,
                             "value": str(_eval_lambda(series.degenerate_bernoulli_carlitz(n, x), lam))})
    elif fam == "higher-degenerate-bernoulli":
        for n in ns:
            for r in rs:
                for x in xs:
                    rows.append({"n": n, "r": r, "x": x,
                                 "value": str(_eval_lambda(series.higher_degenerate_bernoulli(n, r, x), lam))})
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(fam)
    return rows


# ---------------------------------------------------------------------------
# padic-check subcommand
# ---------------------------------------------------------------------------

PADIC_ORACLES = (
    "mu0-bernoulli",
    "difference-eq",
    "muq-moment",
    "muq-carlitz",
    "mu0-higher",
    "mu0-degenerate",
    "muq-higher",
    "muq-degenerate",
    "finite-sym",
)


def _shifted_power(n: int, x: int) -> list[Fraction]:
    import math as _m

    return [Fraction(_m.comb(n, k) * x ** (n - k)) for k in range(n + 1)]


def _lam_value(pol: VarPoly, q0: Fraction, lam0: Fraction) -> Fraction:
    total = Fraction(0)
    for k, c in enumerate(pol.coeffs):
        if isinstance(c, RationalFunctionQ):
            total += c.eval_at(q0) * lam0**k
        else:
            total += Fraction(c) * lam0**k
    return total


def _padic_rows(args) -> tuple[list[dict], bool]:
    p = args.p
    ctx = PadicContext(p, parse_rational(args.q0, p), max(args.level_max, 1), parse_rational(args.lam0))
    levels = list(range(1, args.level_max + 1))
    gain = args.gain
    rows: list[dict] = []
    ok = True

    def emit(params: dict, values: list[Fraction], target: Fraction):
        nonlocal ok
        vals = padic.valuations_against(values, target, p)
        good = padic.nondecreasing_with_gain(vals, gain)
        ok = ok and good
        rows.append(
            {
                **params,
                "levels": levels,
                "valuations": [str(v) for v in vals],
                "target": str(target),
                "status": "pass" if good else "fail",
            }
        )

    oracle = args.oracle
    if oracle == "mu0-bernoulli":
        for n in range(1, args.n_max + 1):
            for x in range(args.x_max + 1):
                emit({"oracle": oracle, "n": n, "x": x},
                     [padic.mu0_truncated(_shifted_power(n, x), ctx, N) for N in levels],
                     series.classical_bernoulli(n, x))
    elif oracle == "difference-eq":
        for n in range(1, args.n_max + 1):
            f = [Fraction(0)] * n + [Fraction(1)]
            vals = [padic.check_difference_eq(f, ctx, N) for N in levels]
            good = padic.nondecreasing_with_gain(vals, 0 if n == 1 else gain)
            ok = ok and good
            rows.append({"oracle": oracle, "n": n, "levels": levels,
                         "valuations": [str(v) for v in vals],
                         "status": "pass" if good else "fail"})
    elif oracle == "muq-moment":
        for l in range(args.n_max + 1):
            target = Fraction(l + 1) / ((1 - ctx.q0 ** (l + 1)) / (1 - ctx.q0))
            emit({"oracle": oracle, "l": l},
                 [padic.muq_truncated_moment(l, ctx, N) for N in levels], target)
    elif oracle == "muq-carlitz":
        for n in range(1, args.n_max + 1):
            for x in range(args.x_max + 1):
                target = qbern.carlitz_beta_poly(n, QExponentArg.of_int(x)).eval_at(ctx.q0)
                emit({"oracle": oracle, "n": n, "x": x},
                     [padic.multi_muq_truncated(n, 1, x, ctx, N) for N in levels], target)
    elif oracle == "mu0-higher":
        for n in range(1, args.n_max + 1):
            target = series.higher_bernoulli(n, args.r, args.x_max)
            emit({"oracle": oracle, "n": n, "r": args.r, "x": args.x_max},
                 [padic.multi_mu0_truncated(n, args.r, args.x_max, ctx, N) for N in levels], target)
    elif oracle == "mu0-degenerate":
        for n in range(1, args.n_max + 1):
            pol = series.higher_degenerate_bernoulli(n, args.r, args.x_max)
            target = Fraction(pol(ctx.lam0))
            emit({"oracle": oracle, "n": n, "r": args.r, "x": args.x_max},
                 [padic.multi_mu0_truncated(n, args.r, args.x_max, ctx, N, lam=ctx.lam0) for N in levels],
                 target)
    elif oracle == "muq-higher":
        for n in range(1, args.n_max + 1):
            target = qbern.higher_beta(n, args.r, QExponentArg.of_int(args.x_max)).eval_at(ctx.q0)
            emit({"oracle": oracle, "n": n, "r": args.r, "x": args.x_max},
                 [padic.multi_muq_truncated(n, args.r, args.x_max, ctx, N) for N in levels], target)
    elif oracle == "muq-degenerate":
        for n in range(1, args.n_max + 1):
            pol = qbern.degenerate_higher_beta(
                QBernParams(n, args.r, QExponentArg.of_int(args.x_max), 1, LambdaScaling.unit())
            )
            target = _lam_value(pol, ctx.q0, ctx.lam0)
            emit({"oracle": oracle, "n": n, "r": args.r, "x": args.x_max},
                 [padic.multi_muq_truncated(n, args.r, args.x_max, ctx, N, lam=ctx.lam0) for N in levels],
                 target)
    elif oracle == "finite-sym":
        for n in range(args.n_max + 1):
            for w1 in range(1, args.w_max + 1):
                for w2 in range(1, args.w_max + 1):
                    chk = padic.finite_level_symmetry(n, args.r, w1, w2, args.x_max, ctx, 1)
                    good = chk.equal
                    ok = ok and good
                    rows.append({"oracle": oracle, "n": n, "r": args.r, "w1": w1, "w2": w2,
                                 "x": args.x_max, "lhs": str(chk.lhs), "rhs": str(chk.rhs),
                                 "status": "pass" if good else "fail"})
    else:  # pragma: no cover
        raise ValueError(oracle)
    return rows, ok


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbern",
        description="Exact q-Bernoulli family tables, identity verification, and p-adic checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = {
        ("--format",): dict(choices=("json", "csv"), default="json", help="output format"),
        ("--out",): dict(default=None, help="output path (default: stdout)"),
    }

    p_table = sub.add_parser("table", help="print a family table")
    p_table.add_argument("--family", required=True, choices=TABLE_FAMILIES)
    p_table.add_argument("--n-max", type=int, default=4)
    p_table.add_argument("--r-max", type=int, default=2)
    p_table.add_argument("--x-max", type=int, default=2)
    p_table.add_argument("--lam", default=None, help="evaluate lambda at a rational a/b instead of keeping it formal")
    for flags, kw in common.items():
        p_table.add_argument(*flags, **kw)

    p_verify = sub.add_parser("verify", help="run an identity over a parameter grid")
    p_verify.add_argument("--identity", required=True, choices=verify.IDENTITY_IDS)
    p_verify.add_argument("--n-max", type=int, default=4)
    p_verify.add_argument("--r-max", type=int, default=2)
    p_verify.add_argument("--w-max", type=int, default=3)
    p_verify.add_argument("--x-max", type=int, default=2)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--p", type=int, default=3, help="prime for finite_sym")
    p_verify.add_argument("--q0", default="1+p", help="rational base point for finite_sym")
    p_verify.add_argument("--lam0", default="0", help="rational degenerate parameter for finite_sym")
    p_verify.add_argument("--timing", action="store_true", help="include elapsed_ms (non-reproducible)")
    p_verify.add_argument("--inject-fault", choices=("stirling",), default=None, help=argparse.SUPPRESS)
    for flags, kw in common.items():
        p_verify.add_argument(*flags, **kw)

    p_padic = sub.add_parser("padic-check", help="run truncated p-adic integral oracles")
    p_padic.add_argument("--oracle", required=True, choices=PADIC_ORACLES)
    p_padic.add_argument("--p", type=int, default=3)
    p_padic.add_argument("--q0", default="1+p")
    p_padic.add_argument("--lam0", default="0")
    p_padic.add_argument("--n-max", type=int, default=3)
    p_padic.add_argument("--r", type=int, default=1)
    p_padic.add_argument("--x-max", type=int, default=1)
    p_padic.add_argument("--w-max", type=int, default=3)
    p_padic.add_argument("--level-max", type=int, default=4)
    p_padic.add_argument("--gain", type=int, default=2)
    for flags, kw in common.items():
        p_padic.add_argument(*flags, **kw)

    return parser


def _write_out(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _inject_fault(kind: str) -> None:
    import qbernoulli

    if kind == "stirling":
        original = qcore.stirling1

        def skewed(n: int, l: int) -> int:
            value = original(n, l)
            return value + 1 if (n, l) == (2, 1) else value

        qcore.stirling1 = skewed  # type: ignore[assignment]
        qbernoulli.clear_caches()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table":
            if args.n_max < 0 or args.r_max < 1 or args.x_max < 0:
                parser.error("need n-max >= 0, r-max >= 1, x-max >= 0")
            rows = _table_rows(args)
            _write_out(_rows_to_output(rows, args.format), args.out)
            return 0

        if args.command == "verify":
            if args.n_max < 0 or args.r_max < 1 or args.w_max < 1 or args.x_max < 0:
                parser.error("need n-max >= 0, r-max >= 1, w-max >= 1, x-max >= 0")
            if args.jobs < 1:
                parser.error("jobs must be >= 1")
            if args.inject_fault:
                _inject_fault(args.inject_fault)
            ctx = None
            if args.identity == "finite_sym":
                if not _is_odd_prime(args.p):
                    parser.error(f"p = {args.p} is not an odd prime")
                ctx = PadicContext(args.p, parse_rational(args.q0, args.p), 6,
                                   parse_rational(args.lam0))
            bounds = GridBounds(args.n_max, args.r_max, args.w_max, args.x_max)
            reports = verify.run_grid(args.identity, bounds, jobs=args.jobs, ctx=ctx, seed=args.seed)
            text = (
                reports_to_json(reports, args.timing)
                if args.format == "json"
                else reports_to_csv(reports, args.timing)
            )
            _write_out(text, args.out)
            return 0 if verify.all_pass(reports) else 1

        if args.command == "padic-check":
            if not _is_odd_prime(args.p):
                parser.error(f"p = {args.p} is not an odd prime")
            if args.n_max < 0 or args.r < 1 or args.level_max < 1:
                parser.error("need n-max >= 0, r >= 1, level-max >= 1")
            rows, ok = _padic_rows(args)
            _write_out(_rows_to_output(rows, args.format), args.out)
            return 0 if ok else 1

    except (WorkBudgetError, PoleError, ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2  # pragma: no cover - unreachable


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
