"""Exact q-Bernoulli polynomial families and their symmetric identities.

The package computes, in exact arithmetic, the classical / degenerate /
higher-order / q- Bernoulli polynomial hierarchy, decides the base-swap
symmetric identities as identities of rational functions in q and
polynomials in lambda, and cross-checks every integral representation
against truncated p-adic sums.
"""
from __future__ import annotations

from . import algebra, padic, qbern, qcore, series, verify

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every internal memo table (used by fault-injection tests)."""
    qcore.clear_caches()
    qbern.clear_caches()
    verify.clear_caches()


__all__ = ["algebra", "qcore", "series", "qbern", "padic", "verify", "clear_caches"]
