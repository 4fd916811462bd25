"""Complete p-elliptic integrals K_p, E_p, their conjugates K_p*, E_p*, and identities.

Values come from hypergeometric series,

    K_p  = (pi_p/2) F(1/p, 1-1/p; 1; k^p)     E_p  = (pi_p/2) F(1/p, -1/p; 1; k^p)
    K_p* = (pi_p/2) F(1/p, 1/p;   1; k^p)     E_p* = (pi_p/2) F(1/p, 1/p-1; 1; k^p)

while :func:`quadrature_value` integrates the defining t-forms directly and
serves as an independent oracle.  When ``k^p > 0.99`` the series is too
slow; K_3 then goes through the cubic AGM and everything else through the
quadrature route, which uses the stored complementary modulus so that
``1 - k^p t^p`` never cancels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .gentrig import PExponent, as_exponent, one_minus_power, pi_p
from .hypergeom import HypergeomParams, gauss_2f1
from .numeric import PrecisionContext, gamma
from .quadrature import integrate

__all__ = [
    "Modulus",
    "K_p",
    "E_p",
    "K_p_star",
    "E_p_star",
    "K_p_star_im",
    "E_p_star_im",
    "quadrature_value",
    "dK_dk",
    "dE_dk",
    "legendre_residual",
    "relation_residuals",
    "special_value_K",
    "special_value_E",
    "KINDS",
    "NEAR_SINGULAR",
]

NEAR_SINGULAR = Fraction(99, 100)
KINDS = ("K", "E", "K*", "E*")


@dataclass(frozen=True)
class Modulus:
    """A modulus k with its complement k' = (1 - k^p)^(1/p).

    ``kp`` and ``kcp`` cache ``k**p`` and ``k'**p``.  Both sides are kept so
    that a modulus near 1 still knows its small complement exactly; build
    one with :meth:`from_k`, :meth:`from_complement` or :meth:`from_pair`.
    """

    k: object
    k_comp: object
    p: PExponent
    kp: object
    kcp: object

    @classmethod
    def from_k(cls, k, p, ctx: PrecisionContext) -> "Modulus":
        p = as_exponent(p)
        mp = ctx.mp
        k = ctx.mpf(k)
        if not 0 <= k < 1:
            raise DomainError(f"modulus must lie in [0, 1), got {k}")
        kp = mp.power(k, p.value(ctx))
        kcp = 1 - kp
        return cls(k, mp.power(kcp, p.inverse(ctx)), p, kp, kcp)

    @classmethod
    def from_complement(cls, k_comp, p, ctx: PrecisionContext) -> "Modulus":
        p = as_exponent(p)
        mp = ctx.mp
        kc = ctx.mpf(k_comp)
        if not 0 < kc <= 1:
            raise DomainError(f"complementary modulus must lie in (0, 1], got {kc}")
        kcp = mp.power(kc, p.value(ctx))
        kp = 1 - kcp
        return cls(mp.power(kp, p.inverse(ctx)), kc, p, kp, kcp)

    @classmethod
    def from_pair(cls, k, k_comp, p, ctx: PrecisionContext) -> "Modulus":
        """Trust both values; they must satisfy ``k^p + k'^p = 1`` to working precision."""
        p = as_exponent(p)
        mp = ctx.mp
        k, kc = ctx.mpf(k), ctx.mpf(k_comp)
        if not (0 <= k < 1 and 0 < kc <= 1):
            raise DomainError(f"invalid modulus pair ({k}, {kc})")
        pv = p.value(ctx)
        kp, kcp = mp.power(k, pv), mp.power(kc, pv)
        if abs(kp + kcp - 1) > ctx.eps * 10**5:
            raise DomainError(f"k^p + k'^p = {kp + kcp}, not 1")
        return cls(k, kc, p, kp, kcp)

    @classmethod
    def symmetric(cls, p, ctx: PrecisionContext) -> "Modulus":
        """The self-complementary modulus k = k' = 2^(-1/p)."""
        p = as_exponent(p)
        k = ctx.mp.power(2, -p.inverse(ctx))
        half = ctx.mpf(Fraction(1, 2))
        return cls(k, k, p, half, half)

    def complementary(self) -> "Modulus":
        if self.k == 0:
            raise DomainError("the complement of k = 0 is 1, outside [0, 1)")
        return Modulus(self.k_comp, self.k, self.p, self.kcp, self.kp)

    def at(self, ctx: PrecisionContext) -> "Modulus":
        """The same modulus with every field converted to ``ctx``."""
        return Modulus(*(ctx.mpf(v) for v in (self.k, self.k_comp)), self.p,
                       *(ctx.mpf(v) for v in (self.kp, self.kcp)))


def _series_params(kind: str, p: PExponent) -> HypergeomParams:
    inv = 1 / p.p
    b = {"K": 1 - inv, "E": -inv, "K*": inv, "E*": inv - 1}[kind]
    return HypergeomParams(inv, b, 1)


def quadrature_value(kind: str, m: Modulus, ctx: PrecisionContext, tol=None):
    """Tanh-sinh evaluation of the t-form integral of ``kind`` in KINDS.

    Returns the full :class:`~pellint.quadrature.QuadratureResult`.
    """
    if kind not in KINDS:
        raise DomainError(f"unknown integral kind {kind!r}")
    mp = ctx.mp
    m = m.at(ctx)
    pv = m.p.value(ctx)
    inv = m.p.inverse(ctx)
    kp, kcp = m.kp, m.kcp

    def integrand(t, _d_lo, d_hi):
        omp = one_minus_power(t, d_hi, pv, ctx)  # 1 - t^p
        den = kcp + kp * omp  # 1 - k^p t^p
        if kind == "K":
            return mp.power(omp, -inv) * mp.power(den, inv - 1)
        if kind == "E":
            return mp.power(den / omp, inv)
        if kind == "K*":
            return mp.power(omp * den, -inv)
        return mp.power(den, 1 - inv) * mp.power(omp, -inv)

    return integrate(integrand, 0, 1, ctx.eps if tol is None else tol, ctx, endpoint_distances=True)


def _evaluate(kind: str, m: Modulus, ctx: PrecisionContext):
    if not isinstance(m, Modulus):
        raise TypeError("expected a Modulus; build one with Modulus.from_k")
    m = m.at(ctx)
    if m.kp <= ctx.mpf(NEAR_SINGULAR):
        return pi_p(m.p, ctx) / 2 * gauss_2f1(_series_params(kind, m.p), m.kp, ctx)
    if kind == "K" and m.p.p == 3:
        from .cubic_agm import m3

        return pi_p(m.p, ctx) / 2 / m3(1, m.k_comp, ctx)
    return quadrature_value(kind, m, ctx).value


def K_p(m: Modulus, ctx: PrecisionContext):
    """Complete p-elliptic integral of the first kind."""
    return _evaluate("K", m, ctx)


def E_p(m: Modulus, ctx: PrecisionContext):
    """Complete p-elliptic integral of the second kind."""
    return _evaluate("E", m, ctx)


def K_p_star(m: Modulus, ctx: PrecisionContext):
    """Conjugate integral ``int_0^{pi_p/2} (1 - k^p sin_p^p)^(-1/p) dtheta``."""
    return _evaluate("K*", m, ctx)


def E_p_star(m: Modulus, ctx: PrecisionContext):
    """Conjugate integral ``int_0^{pi_p/2} (1 - k^p sin_p^p)^(1-1/p) dtheta``."""
    return _evaluate("E*", m, ctx)


def _imaginary_variant(ell, p, ctx: PrecisionContext, outer_exponent):
    p = as_exponent(p)
    mp = ctx.mp
    ell = ctx.mpf(ell)
    if ell < 0:
        raise DomainError(f"ell must be non-negative, got {ell}")
    if ell == 0:
        return pi_p(p, ctx) / 2
    pv = p.value(ctx)
    inv = p.inverse(ctx)
    ellp = mp.power(ell, pv)
    expo = outer_exponent(inv)

    def integrand(t, _d_lo, d_hi):
        omp = one_minus_power(t, d_hi, pv, ctx)
        return mp.power(1 + ellp * mp.power(t, pv), expo) * mp.power(omp, -inv)

    return integrate(integrand, 0, 1, ctx.eps, ctx, endpoint_distances=True).value


def K_p_star_im(ell, p, ctx: PrecisionContext):
    """``int_0^1 (1 - t^p)^(-1/p) (1 + ell^p t^p)^(-1/p) dt``, written K_p*(i_p ell)."""
    return _imaginary_variant(ell, p, ctx, lambda inv: -inv)


def E_p_star_im(ell, p, ctx: PrecisionContext):
    """``int_0^1 (1 + ell^p t^p)^(1-1/p) (1 - t^p)^(-1/p) dt``, written E_p*(i_p ell)."""
    return _imaginary_variant(ell, p, ctx, lambda inv: 1 - inv)


def _require_interior(m: Modulus, what: str):
    if m.k == 0:
        raise DomainError(f"{what} divides by k and is not evaluated at k = 0")


def dE_dk(m: Modulus, ctx: PrecisionContext):
    """``(E_p - K_p) / k``."""
    _require_interior(m, "dE_dk")
    m = m.at(ctx)
    return (E_p(m, ctx) - K_p(m, ctx)) / m.k


def dK_dk(m: Modulus, ctx: PrecisionContext):
    """``(E_p - k'^p K_p) / (k k'^p)``."""
    _require_interior(m, "dK_dk")
    m = m.at(ctx)
    return (E_p(m, ctx) - m.kcp * K_p(m, ctx)) / (m.k * m.kcp)


def legendre_residual(m: Modulus, ctx: PrecisionContext):
    """``K_p(k') E_p(k) + K_p(k) E_p(k') - K_p(k) K_p(k') - pi_p/2``."""
    _require_interior(m, "legendre_residual")
    m = m.at(ctx)
    mc = m.complementary()
    K, E = K_p(m, ctx), E_p(m, ctx)
    Kc, Ec = K_p(mc, ctx), E_p(mc, ctx)
    return Kc * E + K * Ec - K * Kc - pi_p(m.p, ctx) / 2


def _dual_modulus(m: Modulus, ctx: PrecisionContext) -> Modulus:
    """k^(p-1) as a modulus for the conjugate exponent; its p*-th power is k^p."""
    mp = ctx.mp
    q = m.p.conjugate
    e = m.p.value(ctx) - 1
    return Modulus(mp.power(m.k, e), mp.power(m.k_comp, e), q, m.kp, m.kcp)


def relation_residuals(m: Modulus, ctx: PrecisionContext) -> dict:
    """Residuals (left minus right) of the transformation identities at ``m``.

    Keys: ``K_dual_im``, ``K_dual``, ``E_dual_im``, ``E_dual`` (the exponent
    change p -> p* applied to K, E), ``K_im``, ``E_im`` (reduction to the
    imaginary-modulus conjugates), ``K_duality``, ``E_duality`` (the
    symmetric forms with l = k^p).
    """
    m = m.at(ctx)
    p = m.p.value(ctx)
    q = m.p.conjugate.value(ctx)
    kc, kcp = m.k_comp, m.kcp
    ell = m.k / kc
    dual = _dual_modulus(m, ctx)

    K, E = K_p(m, ctx), E_p(m, ctx)
    Kq, Eq = K_p(dual, ctx), E_p(dual, ctx)
    Ks_im = K_p_star_im(ell, m.p, ctx)
    Es_im = E_p_star_im(ell, m.p, ctx)
    kc_pm1 = ctx.mp.power(kc, p - 1)
    return {
        "K_dual_im": Kq - (p - 1) / kc * Ks_im,
        "K_dual": Kq - (p - 1) * K,
        "E_dual_im": Eq - (p - 1) * kc_pm1 * Es_im,
        "E_dual": Eq - (E + (p - 2) * kcp * K),
        "K_im": K - Ks_im / kc,
        "E_im": E - kc_pm1 * ((p - 1) * Es_im - (p - 2) * Ks_im),
        "K_duality": q * Kq - p * K,
        "E_duality": (Eq - kcp * Kq) - (E - kcp * K),
    }


def special_value_K(p, ctx: PrecisionContext):
    """Closed form of K_p(2^(-1/p)) through Gamma values."""
    p = as_exponent(p)
    mp = ctx.mp
    pv = p.value(ctx)
    g = gamma(ctx.mpf(1 / (2 * p.p)), ctx)
    return mp.power(2, 1 / pv) * g * g / (4 * pv * gamma(ctx.mpf(1 / p.p), ctx) * mp.cos(mp.pi / (2 * pv)))


def special_value_E(p, ctx: PrecisionContext):
    """Closed form of E_p(2^(-1/p)) through Gamma values."""
    p = as_exponent(p)
    mp = ctx.mp
    pv = p.value(ctx)
    angle = mp.pi / (2 * pv)
    g1 = gamma(ctx.mpf(1 / (2 * p.p)), ctx)
    g2 = gamma(ctx.mpf(1 / (2 * p.p) + Fraction(1, 2)), ctx)
    prefactor = mp.power(2, 1 / pv) / (8 * pv * gamma(ctx.mpf(1 / p.p), ctx))
    return prefactor * (g1 * g1 / mp.cos(angle) + 2 * pv * g2 * g2 / mp.sin(angle))
