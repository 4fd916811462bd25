"""Generalized trigonometric functions sin_p, cos_p, their inverse and pi_p."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

from .errors import ConvergenceError, DomainError
from .numeric import PrecisionContext
from .quadrature import integrate

__all__ = ["PExponent", "as_exponent", "pi_p", "arcsin_p", "sin_p", "cos_p", "one_minus_power"]

# arcsin_p switches from its power series to quadrature above this argument
SERIES_CUTOFF = Fraction(9, 10)


@dataclass(frozen=True)
class PExponent:
    """The exponent p in (1, oo), held exactly as a rational.

    Decimal strings such as ``"1.5"`` are exact rationals, so the conjugate
    ``p/(p-1)`` is exact too and conjugating twice gives back ``p``.
    """

    p: Fraction

    def __post_init__(self):
        p = self.p
        if isinstance(p, bool):
            raise DomainError("p must be a number")
        if isinstance(p, float):
            p = Fraction(p)
        elif isinstance(p, (str, Decimal)):
            try:
                p = Fraction(str(p).strip())
            except ValueError:
                raise DomainError(f"p is not a decimal number: {p!r}") from None
        elif isinstance(p, Rational):
            p = Fraction(p)
        else:
            raise DomainError(f"p must be rational (int, Fraction, decimal string), got {p!r}")
        if p <= 1:
            raise DomainError(f"p must exceed 1, got {p}")
        object.__setattr__(self, "p", p)

    @property
    def conjugate(self) -> "PExponent":
        return PExponent(self.p / (self.p - 1))

    def value(self, ctx: PrecisionContext):
        return ctx.mpf(self.p)

    def inverse(self, ctx: PrecisionContext):
        """1/p at working precision."""
        return ctx.mpf(1 / self.p)

    def __str__(self):
        return str(self.p)


def as_exponent(p) -> PExponent:
    return p if isinstance(p, PExponent) else PExponent(p)


def one_minus_power(t, dist_to_one, p, ctx: PrecisionContext):
    """``1 - t**p`` for ``0 <= t <= 1`` without cancellation near ``t = 1``.

    ``dist_to_one`` is ``1 - t`` known exactly (e.g. from quadrature nodes).
    """
    mp = ctx.mp
    if t < 0.5:
        return 1 - mp.power(t, p)
    return -mp.expm1(p * mp.log1p(-dist_to_one))


def pi_p(p, ctx: PrecisionContext):
    """``2 pi / (p sin(pi/p))``, twice arcsin_p(1)."""
    p = as_exponent(p).value(ctx)
    mp = ctx.mp
    return 2 * mp.pi / (p * mp.sin(mp.pi / p))


def _arcsin_p_series(x, p, ctx):
    mp = ctx.mp
    eps = ctx.eps
    xp = mp.power(x, p)
    inv_p = 1 / p
    tail_factor = xp / (1 - xp)
    coeff = mp.one  # (1/p)_n / n!
    power = mp.one  # x^(p n)
    total = mp.zero
    n = 0
    while True:
        term = coeff * power / (p * n + 1)
        total += term
        if term < eps and term * tail_factor < eps:
            return x * total
        coeff *= (inv_p + n) / (n + 1)
        power *= xp
        n += 1
        if n > ctx.max_terms:
            raise ConvergenceError("arcsin_p series exceeded max_terms")


def arcsin_p(x, p, ctx: PrecisionContext):
    """``integral_0^x (1 - t^p)^(-1/p) dt`` for ``0 <= x <= 1``.

    Power series up to x = 0.9; above that, pi_p/2 minus the tanh-sinh
    integral over ``[x, 1]``, whose endpoint singularity is handled with
    exact distances to 1.
    """
    p = as_exponent(p)
    x = ctx.mpf(x)
    if not 0 <= x <= 1:
        raise DomainError(f"arcsin_p needs 0 <= x <= 1, got {x}")
    if x == 0:
        return ctx.mp.zero
    half = pi_p(p, ctx) / 2
    if x == 1:
        return half
    pv = p.value(ctx)
    if x <= ctx.mpf(SERIES_CUTOFF):
        return _arcsin_p_series(x, pv, ctx)
    neg_inv = -p.inverse(ctx)
    mp = ctx.mp

    def integrand(t, _d_lo, d_hi):
        return mp.power(one_minus_power(t, d_hi, pv, ctx), neg_inv)

    tail = integrate(integrand, x, 1, ctx.eps, ctx, endpoint_distances=True).value
    return half - tail


def sin_p(theta, p, ctx: PrecisionContext):
    """The x in [0, 1] with ``arcsin_p(x) = theta``, for ``0 <= theta <= pi_p/2``.

    Newton's method with a bisection fallback whenever a step leaves the
    current bracket.  In the upper half the iteration runs on
    ``(pi_p/2 - arcsin_p(x))^(p/(p-1))``, which is close to linear in ``1 - x``
    where arcsin_p itself has an infinite slope.
    """
    p = as_exponent(p)
    mp = ctx.mp
    theta = ctx.mpf(theta)
    half = pi_p(p, ctx) / 2
    if theta < 0 or theta > half * (1 + 100 * ctx.eps):
        raise DomainError(f"sin_p is defined here on [0, pi_p/2], got {theta}")
    if theta == 0:
        return mp.zero
    if theta >= half:
        return mp.one
    pv = p.value(ctx)
    inv_p = p.inverse(ctx)
    eps = ctx.eps
    upper = theta > half / 2
    if upper:
        r = pv / (pv - 1)
        gap = half - theta
        target = mp.power(gap, r)
        # near 1, pi_p/2 - arcsin_p(x) ~ p^(1/p-1) (1-x^p)^(1-1/p) / (1-1/p)
        x = 1 - mp.power(gap * (1 - inv_p) * mp.power(pv, 1 - inv_p), r) / pv
        if not 0 < x < 1:
            x = theta / half
    else:
        x = theta / half
    lo, hi = mp.zero, mp.one
    max_iter = 200 + 4 * ctx.wp
    for _ in range(max_iter):
        asin = arcsin_p(x, p, ctx)
        if upper:
            dist = half - asin
            resid = target - mp.power(dist, r) if dist > 0 else target
        else:
            resid = asin - theta
        if resid == 0:
            return x
        if resid > 0:
            hi = x
        else:
            lo = x
        slope_inv = mp.power(1 - mp.power(x, pv), inv_p)  # 1 / arcsin_p'(x)
        if upper:
            if dist <= 0:
                nxt = (lo + hi) / 2
            else:
                nxt = x - resid * slope_inv / (r * mp.power(dist, r - 1))
        else:
            nxt = x - resid * slope_inv
        if abs(nxt - x) <= eps:
            return nxt if lo <= nxt <= hi else x
        if not lo < nxt < hi:
            nxt = (lo + hi) / 2
        if hi - lo <= eps:
            return nxt
        x = nxt
    raise ConvergenceError(f"sin_p did not converge for theta = {theta}")


def cos_p(theta, p, ctx: PrecisionContext):
    """``(1 - sin_p(theta)^p)^(1/p)``."""
    p = as_exponent(p)
    mp = ctx.mp
    s = sin_p(theta, p, ctx)
    if s == 1:
        return mp.zero
    return mp.power(1 - mp.power(s, p.value(ctx)), p.inverse(ctx))
