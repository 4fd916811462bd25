"""``pellint`` command line.

Exit codes: 0 success, 1 a verify suite exceeded its tolerance, 2 bad
arguments, 3 precision or convergence failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import elliptic
from .cubic_agm import m3, pi3
from .elliptic import Modulus
from .errors import ConvergenceError, DomainError, PrecisionError
from .gentrig import PExponent, pi_p
from .numeric import PrecisionContext, format_decimal
from .suites import SUITES, run_suite

DEFAULT_MAX_DIGITS = 100_000
EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_INTEGRALS = {
    "k": elliptic.K_p,
    "e": elliptic.E_p,
    "kstar": elliptic.K_p_star,
    "estar": elliptic.E_p_star,
}


def max_digits() -> int:
    raw = os.environ.get("PELLINT_MAX_DIGITS")
    if raw is None:
        return DEFAULT_MAX_DIGITS
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"PELLINT_MAX_DIGITS must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("PELLINT_MAX_DIGITS must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=30, help="significant digits (default 30)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="pellint",
        description="Complete p-elliptic integrals, generalized pi and the cubic AGM.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pi", parents=[common], help="pi_p = 2 pi / (p sin(pi/p))")
    sp.add_argument("--p", required=True)

    for name, label in (("k", "K_p"), ("e", "E_p"), ("kstar", "K_p*"), ("estar", "E_p*")):
        sp = sub.add_parser(name, parents=[common], help=f"{label}(k)")
        sp.add_argument("--p", required=True)
        group = sp.add_mutually_exclusive_group(required=True)
        group.add_argument("--k", help="modulus as a decimal string")
        group.add_argument("--k-expr", help="'2^(-1/p)' or 'cbrt:<x>'")

    sp = sub.add_parser("m3", parents=[common], help="cubic AGM M_3(a, b)")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sub.add_parser("pi3", parents=[common], help="pi_3 through the cubic AGM iteration")

    sp = sub.add_parser("verify", parents=[common], help="check identity suites")
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("--p", action="append", help="restrict legendre/relations to this p (repeatable)")
    return parser


def _modulus(args, ctx: PrecisionContext) -> Modulus:
    p = PExponent(args.p)
    if args.k is not None:
        return Modulus.from_k(args.k, p, ctx)
    expr = args.k_expr.replace(" ", "")
    if expr in ("2^(-1/p)", "2**(-1/p)"):
        return Modulus.symmetric(p, ctx)
    if expr.startswith("cbrt:"):
        x = ctx.mpf(expr[len("cbrt:"):])
        if x < 0:
            raise DomainError("cbrt: argument must be non-negative")
        return Modulus.from_k(ctx.mp.cbrt(x), p, ctx)
    raise DomainError(f"unsupported --k-expr {args.k_expr!r}")


def _evaluate(args) -> dict:
    digits = args.digits
    result = {"command": args.command, "inputs": {}, "digits": digits,
              "value": None, "iterations": None, "residuals": {}}
    if args.command == "pi3":
        report = pi3(digits)
        result.update(value=report.value, iterations=report.iterations)
        return result

    ctx = PrecisionContext(digits)
    if args.command == "pi":
        result["inputs"] = {"p": args.p}
        value = pi_p(PExponent(args.p), ctx)
    elif args.command in _INTEGRALS:
        result["inputs"] = {"p": args.p, "k": args.k if args.k is not None else args.k_expr}
        value = _INTEGRALS[args.command](_modulus(args, ctx), ctx)
    elif args.command == "m3":
        result["inputs"] = {"a": args.a, "b": args.b}
        value = m3(args.a, args.b, ctx)
    else:
        p_values = None if not args.p else [PExponent(p) for p in args.p]
        result["inputs"] = {"suite": args.suite, "p": args.p}
        residuals = run_suite(args.suite, ctx, p_values)
        worst = max(residuals.values())
        result["residuals"] = {name: ctx.mp.nstr(r, 5) for name, r in residuals.items()}
        result["value"] = ctx.mp.nstr(worst, 5)
        result["tolerance"] = ctx.mp.nstr(ctx.tolerance, 5)
        result["passed"] = bool(worst <= ctx.tolerance)
        return result
    result["value"] = format_decimal(value, digits, ctx)
    return result


def _render_text(result: dict) -> str:
    if result["command"] != "verify":
        return result["value"]
    width = max(len(n) for n in result["residuals"])
    lines = []
    for name, r in result["residuals"].items():
        lines.append(f"{name:<{width}}  {r}")
    status = "PASS" if result["passed"] else "FAIL"
    lines.append(f"{'max':<{width}}  {result['value']}  (tolerance {result['tolerance']}) {status}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on malformed arguments
    try:
        cap = max_digits()
        if not 1 <= args.digits <= cap:
            raise DomainError(f"--digits must lie in [1, {cap}]")
        result = _evaluate(args)
    except DomainError as exc:
        parser.print_usage(sys.stderr)
        print(f"pellint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, ConvergenceError) as exc:
        print(f"pellint: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if args.format == "json":
        print(json.dumps(result))
    else:
        print(_render_text(result))
    if result["command"] == "verify" and not result["passed"]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
