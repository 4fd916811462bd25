"""Arbitrary-precision substrate: precision contexts, Gamma, decimal output.

Every quantity in the package is an ``mpf`` produced by the private
``mpmath.MPContext`` owned by a :class:`PrecisionContext`.  Contexts are
never mutated after construction, so values and contexts can be shared
freely between threads.  Functions return values carrying the guard
digits (faithful to ``digits``); correct rounding to ``digits`` happens in
:func:`format_decimal`.
"""
from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import DomainError, PrecisionError

__all__ = [
    "PrecisionContext",
    "gamma",
    "duplication_residual",
    "nth_root",
    "format_decimal",
    "bernoulli",
]


@functools.lru_cache(maxsize=None)
def _mp_context(dps: int) -> mpmath.MPContext:
    mp = mpmath.MPContext()
    mp.dps = dps
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision for one evaluation.

    ``digits`` is the number of correct decimal digits requested; all
    arithmetic runs at ``digits + guard``.  ``guard`` defaults to
    ``max(10, digits // 10)``.  ``max_terms`` caps every series and
    iteration in the package.
    """

    digits: int
    guard: int | None = None
    max_terms: int = 1_000_000
    mp: mpmath.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 1:
            raise DomainError(f"digits must be a positive integer, got {self.digits!r}")
        guard = max(10, self.digits // 10) if self.guard is None else int(self.guard)
        if guard < 10:
            raise DomainError(f"guard must be at least 10, got {guard}")
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")
        object.__setattr__(self, "guard", guard)
        object.__setattr__(self, "mp", _mp_context(self.digits + guard))

    @property
    def wp(self) -> int:
        """Working precision in decimal digits."""
        return self.digits + self.guard

    @property
    def eps(self):
        """Unit of the working precision, ``10**-wp``."""
        return self.mp.mpf(10) ** (-self.wp)

    @property
    def tolerance(self):
        """Residual tolerance used by identity checks, ``10**-(digits-3)``."""
        return self.mp.mpf(10) ** (3 - self.digits)

    def elevated(self, extra: int) -> "PrecisionContext":
        """Same request with ``extra`` more guard digits."""
        return PrecisionContext(self.digits, self.guard + extra, self.max_terms)

    def mpf(self, x):
        """Convert ``x`` to a working-precision real.

        Strings are parsed at working precision, never through a machine
        double; rationals are divided at working precision.
        """
        mp = self.mp
        if isinstance(x, bool):
            raise TypeError("booleans are not real numbers here")
        if isinstance(x, int):
            return mp.mpf(x)
        if isinstance(x, Rational):
            return mp.mpf(x.numerator) / x.denominator
        if isinstance(x, Decimal):
            return mp.mpf(str(x))
        if isinstance(x, str):
            try:
                return mp.mpf(x.strip())
            except ValueError:
                raise DomainError(f"not a decimal number: {x!r}") from None
        value = mp.mpf(x)
        if not mp.isfinite(value):
            raise DomainError(f"non-finite value {x!r}")
        return value

    def pi(self):
        return +self.mp.pi


def nth_root(x, n: int, ctx: PrecisionContext):
    """Unique non-negative real ``n``-th root of ``x >= 0``."""
    x = ctx.mpf(x)
    if x < 0:
        raise DomainError(f"nth_root needs a non-negative argument, got {x}")
    if n < 1:
        raise DomainError("root index must be positive")
    if x == 0:
        return ctx.mp.zero
    if n == 3:
        return ctx.mp.cbrt(x)
    return ctx.mp.root(x, n)


def format_decimal(x, digits: int, ctx: PrecisionContext | None = None) -> str:
    """Round ``x`` to ``digits`` significant digits in plain positional notation."""
    mp = ctx.mp if ctx is not None else x.context
    return mp.nstr(x, digits, strip_zeros=False, min_fixed=-mp.inf, max_fixed=mp.inf)


# Bernoulli numbers B_0, B_1, ... as exact fractions (B_1 = -1/2).
_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n, from the classical recurrence."""
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    with _bernoulli_lock:
        cache = _bernoulli_cache
        while len(cache) <= n:
            m = len(cache)
            if m > 1 and m % 2 == 1:
                cache.append(Fraction(0))
                continue
            # sum_{j<m} C(m+1, j) B_j = -(m+1) B_m
            s = Fraction(0)
            binom = 1
            for j in range(m):
                s += binom * cache[j]
                binom = binom * (m + 1 - j) // (j + 1)
            cache.append(-s / (m + 1))
        return cache[n]


def _log_gamma_stirling(y, inner: PrecisionContext):
    """log Gamma(y) for large positive y via the Stirling series.

    For real y > 0 the remainder after the B_{2N} term is bounded by the
    magnitude of the first omitted term.
    """
    mp = inner.mp
    target = mp.mpf(10) ** (-(inner.wp + 2))
    total = (y - mp.mpf(0.5)) * mp.log(y) - y + mp.log(2 * mp.pi) / 2
    y2 = y * y
    ypow = y
    k = 1
    while True:
        if k > inner.max_terms:
            raise PrecisionError("Stirling series did not reach tolerance")
        b = bernoulli(2 * k)
        total += inner.mpf(b) / ((2 * k) * (2 * k - 1) * ypow)
        ypow *= y2
        nb = bernoulli(2 * k + 2)
        bound = abs(inner.mpf(nb)) / ((2 * k + 2) * (2 * k + 1) * ypow)
        if bound < target:
            return total
        k += 1


def gamma(x, ctx: PrecisionContext):
    """Gamma function for real ``x > 0``.

    The argument is shifted up to ``y = x + m`` where the Stirling series
    converges to working precision, then divided by the rising factorial
    ``x (x+1) ... (x+m-1)``.
    """
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError(f"gamma is only implemented for x > 0, got {x}")
    # exp() turns absolute error in log Gamma(y) ~ y log y into relative error
    shift_floor = math.ceil(0.45 * ctx.wp) + 2
    extra = 6 + int(math.log10(shift_floor * math.log(shift_floor + 1) + 10))
    inner = PrecisionContext(ctx.digits, ctx.guard + extra, ctx.max_terms)
    xi = inner.mpf(x)
    m = max(0, math.ceil(shift_floor - float(xi)))
    y = xi + m
    lg = _log_gamma_stirling(y, inner)
    rising = inner.mp.one
    for j in range(m):
        rising *= xi + j
    return ctx.mpf(inner.mp.exp(lg) / rising)


def duplication_residual(z, ctx: PrecisionContext):
    """``Gamma(2z) - 2**(2z-1) Gamma(z) Gamma(z+1/2) / sqrt(pi)``; a Gamma self-test."""
    mp = ctx.mp
    z = ctx.mpf(z)
    if z <= 0:
        raise DomainError(f"duplication_residual needs z > 0, got {z}")
    half = mp.mpf(1) / 2
    rhs = mp.power(2, 2 * z - 1) * gamma(z, ctx) * gamma(z + half, ctx) / mp.sqrt(mp.pi)
    return gamma(2 * z, ctx) - rhs
