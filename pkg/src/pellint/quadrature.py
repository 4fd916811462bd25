"""Tanh-sinh (double-exponential) quadrature at arbitrary precision.

The substitution ``x = tanh(pi/2 sinh u)`` clusters nodes double
exponentially at both endpoints, so trapezoid sums in ``u`` converge
quickly even for integrands with algebraic endpoint singularities such
as ``(1 - t**p)**(-1/p)``.

Integrands that lose accuracy near an endpoint (``1 - t**p`` when ``t``
rounds to 1) can ask for the exact distances to both endpoints with
``endpoint_distances=True``; they are then called as ``f(x, d_lo, d_hi)``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable

from .errors import ConvergenceError, DomainError
from .numeric import PrecisionContext

__all__ = ["QuadratureResult", "integrate", "MAX_LEVEL"]

MAX_LEVEL = 12
_MIN_LEVEL = 3

_node_cache: dict[tuple[int, int], list] = {}
_node_lock = threading.Lock()


@dataclass(frozen=True)
class QuadratureResult:
    value: object
    error_estimate: object
    levels_used: int
    level_errors: tuple = ()  # |S_L - S_{L-1}| for L = 1 .. levels_used


def _nodes(ctx: PrecisionContext, level: int):
    """Nodes ``(delta, weight)`` on the reference interval for one level.

    ``delta = 1 - tanh(v)`` is the distance to the nearer endpoint of
    ``[-1, 1]``; ``weight`` already includes the step ``h = 2**-level``.
    Level 0 holds ``u = 0, 1, 2, ...``; level ``L >= 1`` holds only the new
    odd multiples of ``h``.  Nodes stop once ``delta`` drops below
    ``10**-(12 wp)``, far beyond any contribution visible at working
    precision for the singularities met in this package.
    """
    key = (ctx.wp, level)
    with _node_lock:
        cached = _node_cache.get(key)
    if cached is not None:
        return cached

    mp = ctx.mp
    h = mp.ldexp(mp.one, -level)
    half_pi = mp.pi / 2
    floor = mp.mpf(10) ** (-12 * ctx.wp)
    if level == 0:
        start, stride = 0, 1
    else:
        start, stride = 1, 2
    nodes = []
    j = start
    while True:
        u = j * h
        v = half_pi * mp.sinh(u)
        e = mp.exp(-2 * v)
        delta = 2 * e / (1 + e)
        # derivative of tanh(v(u)) is (pi/2) cosh(u) sech^2(v); sech^2(v) = 4e/(1+e)^2
        weight = h * half_pi * mp.cosh(u) * 4 * e / (1 + e) ** 2
        nodes.append((delta, weight))
        if delta < floor:
            break
        j += stride
    with _node_lock:
        _node_cache.setdefault(key, nodes)
    return nodes


def _level_sum(f, lo, hi, half, nodes, with_distances, ctx, tiny):
    """Weighted sum of ``f`` over one level's nodes, both sides of the midpoint."""
    total = ctx.mp.zero
    quiet_left = quiet_right = 0
    two_half = 2 * half
    for delta, weight in nodes:
        d_near = half * delta
        d_far = two_half - d_near
        w = half * weight
        if delta == 1:
            # u == 0: the midpoint, counted once
            x = lo + half
            total += w * (f(x, half, half) if with_distances else f(x))
            continue
        if quiet_right < 2:
            x = hi - d_near
            if not with_distances and x == hi:
                # node rounded onto the endpoint; remaining nodes are closer still
                quiet_right = 2
        if quiet_right < 2:
            term = w * (f(x, d_far, d_near) if with_distances else f(x))
            total += term
            quiet_right = quiet_right + 1 if abs(term) < tiny else 0
        if quiet_left < 2:
            x = lo + d_near
            if not with_distances and x == lo:
                quiet_left = 2
        if quiet_left < 2:
            term = w * (f(x, d_near, d_far) if with_distances else f(x))
            total += term
            quiet_left = quiet_left + 1 if abs(term) < tiny else 0
        if quiet_left >= 2 and quiet_right >= 2:
            break
    return total


def integrate(
    f: Callable,
    lo,
    hi,
    tol,
    ctx: PrecisionContext,
    *,
    endpoint_distances: bool = False,
    max_level: int = MAX_LEVEL,
) -> QuadratureResult:
    """Integrate ``f`` over ``[lo, hi]`` by tanh-sinh with level doubling.

    Refinement stops when two successive levels differ by at most ``tol``;
    ``error_estimate`` is that difference.  A ``tol`` below the rounding
    noise of the sums (100 ulps of the result) is raised to that floor.
    Raises ConvergenceError if ``max_level`` is reached first.
    """
    mp = ctx.mp
    lo = ctx.mpf(lo)
    hi = ctx.mpf(hi)
    tol = ctx.mpf(tol)
    if hi < lo:
        raise DomainError("integration bounds must satisfy lo <= hi")
    if hi == lo:
        return QuadratureResult(mp.zero, mp.zero, 0)
    half = (hi - lo) / 2
    tiny = min(tol, ctx.eps) / 1000 if tol > 0 else ctx.eps ** 2

    estimate = _level_sum(f, lo, hi, half, _nodes(ctx, 0), endpoint_distances, ctx, tiny)
    previous = estimate
    err = None
    errors = []
    for level in range(1, max_level + 1):
        fresh = _level_sum(f, lo, hi, half, _nodes(ctx, level), endpoint_distances, ctx, tiny)
        estimate = previous / 2 + fresh
        err = abs(estimate - previous)
        errors.append(err)
        noise = 100 * ctx.eps * max(1, abs(estimate))
        if level >= _MIN_LEVEL and err <= max(tol, noise):
            return QuadratureResult(estimate, err, level, tuple(errors))
        previous = estimate
    raise ConvergenceError(
        f"tanh-sinh did not converge after {max_level} levels (estimate {err} > {tol})"
    )
