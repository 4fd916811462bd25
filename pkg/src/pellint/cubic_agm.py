"""The cubic arithmetic-geometric mean and the cubically convergent pi_3 iteration.

The iteration is

    a_{n+1} = (a_n + 2 b_n) / 3,    b_{n+1} = cbrt((a_n^2 + a_n b_n + b_n^2) b_n / 3),

with c_n = cbrt(a_n^3 - b_n^3).  Since a_{n+1}^3 - b_{n+1}^3 = (a_n - b_n)^3 / 27,
``c_{n+1} = (a_n - b_n) / 3`` exactly, which avoids the cancellation of the
cube-root form once a_n and b_n agree to many digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .elliptic import E_p, K_p, K_p_star, Modulus
from .errors import ConvergenceError, DomainError, PrecisionError
from .gentrig import one_minus_power, pi_p
from .numeric import PrecisionContext, format_decimal
from .quadrature import integrate

__all__ = [
    "AgmState",
    "Pi3Report",
    "agm_step",
    "agm_trajectory",
    "m3",
    "I3",
    "J3",
    "k3_agm_residual",
    "ramanujan_residual",
    "ke_transform_residuals",
    "constancy_residual",
    "ij_recursion_residual",
    "j_sum_residual",
    "pi3_iterates",
    "pi3",
    "planned_iterations",
    "remark_residual",
]

THREE = 3


@dataclass(frozen=True)
class AgmState:
    """Step ``n`` of the cubic AGM: ``(a_n, b_n, c_n)`` with ``c_n^3 = a_n^3 - b_n^3``.

    ``c_n`` is the real cube root, so it is negative when ``a_n < b_n``.
    """

    n: int
    a: object
    b: object
    c: object


def _initial_state(a, b, ctx: PrecisionContext) -> AgmState:
    mp = ctx.mp
    a, b = ctx.mpf(a), ctx.mpf(b)
    if a <= 0 or b <= 0:
        raise DomainError(f"cubic AGM needs a, b > 0, got ({a}, {b})")
    diff = a**3 - b**3
    c = mp.cbrt(diff) if diff >= 0 else -mp.cbrt(-diff)
    return AgmState(0, a, b, c)


def agm_step(s: AgmState, ctx: PrecisionContext) -> AgmState:
    mp = ctx.mp
    a, b = ctx.mpf(s.a), ctx.mpf(s.b)
    if a <= 0 or b <= 0:
        raise DomainError(f"cubic AGM needs a, b > 0, got ({a}, {b})")
    return AgmState(
        s.n + 1,
        (a + 2 * b) / 3,
        mp.cbrt((a * a + a * b + b * b) * b / 3),
        (a - b) / 3,
    )


def agm_trajectory(a, b, n_steps: int, ctx: PrecisionContext) -> list[AgmState]:
    """States 0 through ``n_steps`` starting from ``(a, b)``."""
    states = [_initial_state(a, b, ctx)]
    for _ in range(n_steps):
        states.append(agm_step(states[-1], ctx))
    return states


def m3(a, b, ctx: PrecisionContext):
    """Common limit M_3(a, b) of the cubic AGM sequences.

    Also defined for ``a < b``, by the same recurrences.
    """
    state = _initial_state(a, b, ctx)
    scale = max(state.a, state.b)
    target = ctx.eps * scale
    cap = 10 + 3 * ctx.wp
    for _ in range(cap):
        if abs(state.a - state.b) <= target:
            return (state.a + state.b) / 2
        state = agm_step(state, ctx)
    raise ConvergenceError(f"cubic AGM did not settle within {cap} steps")


def _ij_quadrature(a, b, ctx, first_kind: bool):
    # a^3 cos_3^3 + b^3 sin_3^3 becomes a^3 (1 - t^3) + b^3 t^3 under t = sin_3(theta)
    mp = ctx.mp
    a3, b3 = a**3, b**3
    third = ctx.mpf(Fraction(1, 3))

    def integrand(t, _d_lo, d_hi):
        omp = one_minus_power(t, d_hi, THREE, ctx)
        mix = a3 * omp + b3 * t**3
        weight = mp.power(omp, -third)
        return weight * (mp.power(mix, -2 * third) if first_kind else mp.cbrt(mix))

    return integrate(integrand, 0, 1, ctx.eps, ctx, endpoint_distances=True).value


def I3(a, b, ctx: PrecisionContext):
    """``int_0^{pi_3/2} (a^3 cos_3^3 + b^3 sin_3^3)^(-2/3) dtheta``.

    For ``a >= b`` this is ``K_3(kappa) / a^2`` with complementary modulus
    ``b/a``; for ``a < b`` the integral is evaluated directly.
    """
    a, b = ctx.mpf(a), ctx.mpf(b)
    if a <= 0 or b <= 0:
        raise DomainError(f"I3 needs a, b > 0, got ({a}, {b})")
    if a < b:
        return _ij_quadrature(a, b, ctx, True)
    return K_p(Modulus.from_complement(b / a, THREE, ctx), ctx) / (a * a)


def J3(a, b, ctx: PrecisionContext):
    """``int_0^{pi_3/2} (a^3 cos_3^3 + b^3 sin_3^3)^(1/3) dtheta``, equal to ``a E_3(kappa)`` for a >= b."""
    a, b = ctx.mpf(a), ctx.mpf(b)
    if a <= 0 or b <= 0:
        raise DomainError(f"J3 needs a, b > 0, got ({a}, {b})")
    if a < b:
        return _ij_quadrature(a, b, ctx, False)
    return a * E_p(Modulus.from_complement(b / a, THREE, ctx), ctx)


def k3_agm_residual(k, ctx: PrecisionContext):
    """``K_3(k) M_3(1, k') - pi_3/2``."""
    m = Modulus.from_k(k, THREE, ctx)
    return K_p(m, ctx) * m3(1, m.k_comp, ctx) - pi_p(THREE, ctx) / 2


def _mu_pair(k, ctx):
    """``(cbrt(9 (1+k+k^2) k) / (1+2k), (1-k)/(1+2k))``: a modulus and its complement."""
    d = 1 + 2 * k
    return ctx.mp.cbrt(9 * (1 + k + k * k) * k) / d, (1 - k) / d


def ramanujan_residual(k, ctx: PrecisionContext):
    """``K_3(k') - 3/(1+2k) K_3((1-k)/(1+2k))`` for ``0 < k <= 1``.

    Equivalent to F(1/3,2/3;1;1-k^3) = 3/(1+2k) F(1/3,2/3;1;((1-k)/(1+2k))^3).
    """
    k = ctx.mpf(k)
    if not 0 < k <= 1:
        raise DomainError(f"ramanujan_residual needs 0 < k <= 1, got {k}")
    lhs = K_p(Modulus.from_complement(k, THREE, ctx), ctx)
    mu, ell = _mu_pair(k, ctx)
    rhs = 3 / (1 + 2 * k) * K_p(Modulus.from_pair(ell, mu, THREE, ctx), ctx)
    return lhs - rhs


def ke_transform_residuals(k, ctx: PrecisionContext) -> dict:
    """Residuals of the four cubic modulus transformations of K_3 and E_3.

    ``"i"``:   K_3(k) = K_3(mu) / (1+2k)
    ``"ii"``:  K_3(k) = 3/(1+2k') K_3(lam)
    ``"iii"``: E_3(k) = (1+2k)/3 E_3(mu) + (1-k)(2+k)/3 K_3(k)
    ``"iv"``:  E_3(k) = (1+2k') E_3(lam) - k'(1+k') K_3(k)

    with mu = cbrt(9(1+k+k^2)k)/(1+2k) and lam = (1-k')/(1+2k').
    """
    m = Modulus.from_k(k, THREE, ctx)
    k, kc = m.k, m.k_comp
    mu, mu_comp = _mu_pair(k, ctx)
    lam_comp, lam = _mu_pair(kc, ctx)
    mu_mod = Modulus.from_pair(mu, mu_comp, THREE, ctx)
    lam_mod = Modulus.from_pair(lam, lam_comp, THREE, ctx)

    K, E = K_p(m, ctx), E_p(m, ctx)
    return {
        "i": K - K_p(mu_mod, ctx) / (1 + 2 * k),
        "ii": K - 3 / (1 + 2 * kc) * K_p(lam_mod, ctx),
        "iii": E - ((1 + 2 * k) / 3 * E_p(mu_mod, ctx) + (1 - k) * (2 + k) / 3 * K),
        "iv": E - ((1 + 2 * kc) * E_p(lam_mod, ctx) - kc * (1 + kc) * K),
    }


def _ordered_start(a, b, ctx):
    a, b = ctx.mpf(a), ctx.mpf(b)
    if not a >= b > 0:
        raise DomainError(f"requires a >= b > 0, got ({a}, {b})")
    return a, b


def constancy_residual(a, b, n_steps: int, ctx: PrecisionContext):
    """``max_n |a_n I(a_n, b_n) - a I(a, b)|`` over steps ``0..n_steps``."""
    a, b = _ordered_start(a, b, ctx)
    traj = agm_trajectory(a, b, n_steps, ctx)
    base = a * I3(a, b, ctx)
    return max(abs(s.a * I3(s.a, s.b, ctx) - base) for s in traj)


def ij_recursion_residual(a, b, n_steps: int, ctx: PrecisionContext):
    """``max_n |3 J_{n+1} - J_n - a_n b_n (a_n + b_n) I_n|`` for ``n < n_steps``."""
    a, b = _ordered_start(a, b, ctx)
    traj = agm_trajectory(a, b, n_steps, ctx)
    J = [J3(s.a, s.b, ctx) for s in traj]
    worst = ctx.mp.zero
    for n in range(n_steps):
        s = traj[n]
        r = 3 * J[n + 1] - J[n] - s.a * s.b * (s.a + s.b) * I3(s.a, s.b, ctx)
        worst = max(worst, abs(r))
    return worst


def _c_sum(a, b, ctx: PrecisionContext):
    """``sum_{n>=1} 3^n (a_n + c_n) c_n``, stopped once a term drops below ``10**-wp``.

    Also stops once a_n and b_n agree to rounding: later c_n would be pure
    rounding noise amplified by 3^n, while their true values shrink cubically.
    """
    state = _initial_state(a, b, ctx)
    total = ctx.mp.zero
    eps = ctx.eps
    for _ in range(10 + 3 * ctx.wp):
        state = agm_step(state, ctx)
        term = 3**state.n * (state.a + state.c) * state.c
        total += term
        if abs(term) < eps or abs(state.a - state.b) <= eps * state.a:
            return total
    raise ConvergenceError("c-sum did not reach working precision")


def j_sum_residual(a, b, ctx: PrecisionContext):
    """``J(a,b) - (a^3 - a sum_{n>=1} 3^n (a_n + c_n) c_n) I(a,b)``."""
    a, b = _ordered_start(a, b, ctx)
    return J3(a, b, ctx) - (a**3 - a * _c_sum(a, b, ctx)) * I3(a, b, ctx)


def remark_residual(k, ctx: PrecisionContext):
    """``K_3*(k) - (pi_3/2) / M_3(k', 1)``; here the first AGM argument is the smaller."""
    m = Modulus.from_k(k, THREE, ctx)
    return K_p_star(m, ctx) - pi_p(THREE, ctx) / 2 / m3(m.k_comp, 1, ctx)


def pi3_iterates(count: int, ctx: PrecisionContext):
    """Approximations q_1 .. q_count of pi_3 and the trajectory behind them.

    Starting from ``(1, 2^(-1/3))``, with ``S_n = sum_{j=1}^{n} 3^j (a_j + c_j) c_j``,

        q_m = 2 a_{m+1}^2 / (1 - 2 S_{m+1}).

    This indexing reproduces the published convergence table (errors
    2.9449e-12, 4.0425e-40, 1.0367e-124, 1.8728e-379 for m = 1..4).
    """
    if count < 1:
        raise DomainError("need at least one iterate")
    traj = [_initial_state(1, ctx.mp.cbrt(ctx.mpf(Fraction(1, 2))), ctx)]
    partial = ctx.mp.zero
    qs = []
    while len(qs) < count:
        s = agm_step(traj[-1], ctx)
        traj.append(s)
        partial += 3**s.n * (s.a + s.c) * s.c
        if s.n >= 2:
            denom = 1 - 2 * partial
            if denom <= 0:
                raise PrecisionError(f"non-positive denominator 1 - 2 S_{s.n} = {denom}")
            qs.append(2 * s.a * s.a / denom)
    return qs, traj


def planned_iterations(digits: int) -> int:
    """Iteration count expected for ``digits`` digits: the error exponent roughly triples per step."""
    return max(1, math.ceil(math.log(digits / 4, 3)) + 1)


@dataclass(frozen=True)
class Pi3Report:
    digits_requested: int
    iterations: int
    q_m: object
    error_bound: object
    trajectory: list = field(repr=False)

    @property
    def value(self) -> str:
        """q_m rounded to the requested number of significant digits."""
        return format_decimal(self.q_m, self.digits_requested)


def pi3(digits: int, max_iterations: int = 64) -> Pi3Report:
    """pi_3 = 4 sqrt(3) pi / 9 to ``digits`` significant digits via the cubic AGM.

    Runs at ``digits + 20 + 10 m`` working digits for the planned count m and
    stops once m is reached and two successive iterates agree to
    ``10**-digits``.
    """
    if int(digits) != digits or digits < 1:
        raise DomainError(f"digits must be a positive integer, got {digits!r}")
    planned = planned_iterations(digits)
    ctx = PrecisionContext(digits, guard=20 + 10 * planned)
    mp = ctx.mp
    threshold = mp.mpf(10) ** (-digits)
    for count in range(max(2, planned), max_iterations + 1):
        qs, traj = pi3_iterates(count, ctx)
        gap = abs(qs[-1] - qs[-2])
        if gap <= threshold:
            bound = gap + mp.mpf(10) ** (10 - ctx.wp)
            return Pi3Report(digits, count, qs[-1], bound, traj)
    raise PrecisionError(f"pi_3 iteration did not settle within {max_iterations} steps")
