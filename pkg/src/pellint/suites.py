"""Named identity suites run by ``pellint verify`` over built-in grids.

Each suite returns ``{identity_name: max |residual|}``.
"""
from __future__ import annotations

from fractions import Fraction

from .cubic_agm import (
    constancy_residual,
    ij_recursion_residual,
    j_sum_residual,
    k3_agm_residual,
    ke_transform_residuals,
    ramanujan_residual,
    remark_residual,
)
from .elliptic import Modulus, legendre_residual, relation_residuals
from .gentrig import as_exponent, pi_p
from .numeric import PrecisionContext

P_GRID = ("1.5", "2", "3", "4", "7")
DUALITY_P = ("1.5", "3", "5")
LEGENDRE_K = ("0.1", "0.3", None, "0.7", "0.9")  # None marks 2^(-1/p)
FINE_K = tuple(f"0.{i:02d}" for i in range(5, 100, 5))
AGM_STEPS = 4

SUITES = ("legendre", "relations", "ramanujan", "ke", "agm")


def _keep_max(acc: dict, name: str, value):
    value = abs(value)
    if name not in acc or value > acc[name]:
        acc[name] = value


def legendre(ctx: PrecisionContext, p_values=P_GRID) -> dict:
    out = {}
    for p in p_values:
        for k in LEGENDRE_K:
            m = Modulus.symmetric(p, ctx) if k is None else Modulus.from_k(k, p, ctx)
            _keep_max(out, "legendre", legendre_residual(m, ctx))
    return out


def relations(ctx: PrecisionContext, p_values=P_GRID) -> dict:
    out = {}
    for p in p_values:
        for k in ("0",) + FINE_K:
            for name, r in relation_residuals(Modulus.from_k(k, p, ctx), ctx).items():
                _keep_max(out, name, r)
    for p in DUALITY_P:
        e = as_exponent(p)
        q = e.conjugate
        _keep_max(out, "pi_duality", q.value(ctx) * pi_p(q, ctx) - e.value(ctx) * pi_p(e, ctx))
    return out


def ramanujan(ctx: PrecisionContext) -> dict:
    out = {}
    for k in FINE_K + ("1",):
        _keep_max(out, "ramanujan", ramanujan_residual(k, ctx))
    return out


def ke(ctx: PrecisionContext) -> dict:
    out = {}
    for k in ("0",) + FINE_K:
        for name, r in ke_transform_residuals(k, ctx).items():
            _keep_max(out, f"ke_{name}", r)
    return out


def agm(ctx: PrecisionContext) -> dict:
    out = {}
    starts = ((1, ctx.mp.cbrt(ctx.mpf(Fraction(1, 2)))), (1, ctx.mpf("0.3")))
    for a, b in starts:
        _keep_max(out, "constancy", constancy_residual(a, b, AGM_STEPS, ctx))
        _keep_max(out, "ij_recursion", ij_recursion_residual(a, b, AGM_STEPS, ctx))
        _keep_max(out, "j_sum", j_sum_residual(a, b, ctx))
    cube_root_half = ctx.mp.cbrt(ctx.mpf(Fraction(1, 2)))
    for k in ("0.1", "0.5", cube_root_half, "0.9"):
        _keep_max(out, "k3_agm", k3_agm_residual(k, ctx))
    for k in ("0", "0.5", "0.9"):
        _keep_max(out, "k3_star_agm", remark_residual(k, ctx))
    return out


def run_suite(name: str, ctx: PrecisionContext, p_values=None) -> dict:
    if name == "all":
        out = {}
        for sub in SUITES:
            out.update(run_suite(sub, ctx, p_values))
        return out
    if name in ("legendre", "relations"):
        fn = legendre if name == "legendre" else relations
        return fn(ctx) if p_values is None else fn(ctx, p_values)
    return {"ramanujan": ramanujan, "ke": ke, "agm": agm}[name](ctx)
