"""Pochhammer symbols and the Gaussian hypergeometric series on [0, 1)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, PrecisionError
from .numeric import PrecisionContext

__all__ = ["HypergeomParams", "pochhammer", "gauss_2f1", "series_terms"]


@dataclass(frozen=True)
class HypergeomParams:
    """Parameters ``(a, b; c)`` of F(a, b; c; x).

    Values may be ints, Fractions, decimal strings or mpf; they are
    converted at the precision of each evaluation.
    """

    a: object
    b: object
    c: object

    def __post_init__(self):
        c = self.c
        try:
            is_pole = c <= 0 and c == int(c)
        except TypeError:
            is_pole = False
        if is_pole:
            raise DomainError(f"c must not be zero or a negative integer, got {c}")

    def swapped(self) -> "HypergeomParams":
        return HypergeomParams(self.b, self.a, self.c)


def pochhammer(a, n: int, ctx: PrecisionContext):
    """Rising factorial ``a (a+1) ... (a+n-1)``, with ``(a)_0 = 1``."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    a = ctx.mpf(a)
    result = ctx.mp.one
    for j in range(n):
        result *= a + j
    return result


def series_terms(params: HypergeomParams, x, ctx: PrecisionContext) -> Iterator:
    """Yield the terms ``(a)_n (b)_n / (c)_n x^n / n!`` for n = 0, 1, 2, ...

    Each term is the previous one times ``(a+n)(b+n) x / ((c+n)(n+1))``.
    """
    a, b, c = (ctx.mpf(v) for v in (params.a, params.b, params.c))
    x = ctx.mpf(x)
    term = ctx.mp.one
    n = 0
    while True:
        yield term
        term = term * (a + n) * (b + n) * x / ((c + n) * (n + 1))
        n += 1


def gauss_2f1(params: HypergeomParams, x, ctx: PrecisionContext):
    """Sum F(a, b; c; x) for ``0 <= x < 1``.

    Summation stops once a term is below ``10**-wp`` and the geometric
    tail bound ``|term| x / (1 - x)`` is as well.  Raises PrecisionError
    when ``ctx.max_terms`` terms are not enough; arguments close to 1 need
    a transformation rather than brute force.
    """
    x = ctx.mpf(x)
    if not 0 <= x < 1:
        raise DomainError(f"gauss_2f1 is summed only for 0 <= x < 1, got {x}")
    if x == 0:
        return ctx.mp.one
    eps = ctx.eps
    tail_factor = x / (1 - x)
    total = ctx.mp.zero
    for n, term in enumerate(series_terms(params, x, ctx)):
        total += term
        if term == 0:
            # a or b is a non-positive integer: the series terminates
            return total
        size = abs(term)
        if size < eps and size * tail_factor < eps:
            return total
        if n >= ctx.max_terms:
            raise PrecisionError(
                f"hypergeometric series needs more than {ctx.max_terms} terms at x = {x}"
            )
