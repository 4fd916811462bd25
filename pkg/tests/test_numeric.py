import math
import threading
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from pellint import DomainError, PrecisionContext, duplication_residual, format_decimal, gamma
from pellint.numeric import bernoulli, nth_root


def test_context_guard_and_tolerance():
    ctx = PrecisionContext(50)
    assert ctx.guard == 10
    assert ctx.wp == 60
    assert ctx.tolerance == ctx.mpf("1e-47")
    assert PrecisionContext(300).guard == 30
    with pytest.raises(DomainError):
        PrecisionContext(0)


def test_mpf_parses_decimal_strings_exactly():
    ctx = PrecisionContext(40)
    x = ctx.mpf("0.1")
    assert abs(x * 10 - 1) < ctx.eps
    assert abs(ctx.mpf(Fraction(1, 3)) * 3 - 1) < ctx.eps


def test_gamma_examples(ctx50):
    assert gamma(1, ctx50) == 1
    sqrt_pi = ctx50.mp.sqrt(ctx50.pi())
    assert abs(gamma(Fraction(1, 2), ctx50) - sqrt_pi) < ctx50.tolerance
    assert format_decimal(gamma(Fraction(1, 4), ctx50), 17) == "3.6256099082219083"


@pytest.mark.parametrize("x", [0.1, 0.25, 0.5, 1.0, 1.5, 2.5, 7.3, 20.0, 100.5])
def test_gamma_matches_double_precision(x, ctx30):
    assert float(gamma(x, ctx30)) == pytest.approx(math.gamma(x), rel=1e-14)


@pytest.mark.parametrize("digits", [15, 60, 250])
@pytest.mark.parametrize("x", ["0.125", "0.3333", "2.75", "33.5"])
def test_gamma_matches_mpmath(digits, x):
    ctx = PrecisionContext(digits)
    with mpmath.workdps(digits + 20):
        expected = mpmath.gamma(mpmath.mpf(x))
        got = mpmath.mpf(gamma(x, ctx))
        assert abs(got / expected - 1) < mpmath.mpf(10) ** (2 - digits)


@pytest.mark.parametrize("x", [0, -1, "-0.5"])
def test_gamma_rejects_nonpositive(x, ctx30):
    with pytest.raises(DomainError):
        gamma(x, ctx30)


@pytest.mark.parametrize("z", [Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), "0.7", "1.3", 1])
def test_duplication(z, ctx50):
    assert abs(duplication_residual(z, ctx50)) <= ctx50.mpf(10) ** -48


@pytest.mark.parametrize("x", [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), "1.5"])
def test_recurrence(x, ctx50):
    x = ctx50.mpf(x)
    assert abs(gamma(x + 1, ctx50) - x * gamma(x, ctx50)) <= ctx50.mpf(10) ** -48


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100)))
def test_reflection(x):
    ctx = PrecisionContext(40)
    mp = ctx.mp
    x = ctx.mpf(x)
    value = gamma(x, ctx) * gamma(1 - x, ctx) * mp.sin(mp.pi * x) / mp.pi
    assert abs(value - 1) <= ctx.mpf(10) ** -38


def test_bernoulli_numbers():
    assert [bernoulli(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert bernoulli(20) == Fraction(-174611, 330)


def test_nth_root_is_positive_root(ctx30):
    r = nth_root(8, 3, ctx30)
    assert abs(r - 2) < ctx30.eps
    with pytest.raises(DomainError):
        nth_root(-8, 3, ctx30)


def test_format_decimal_rounds_to_significant_digits(ctx30):
    assert format_decimal(ctx30.pi(), 10) == "3.141592654"
    assert format_decimal(ctx30.mpf(1), 3) == "1.00"


def test_gamma_is_thread_safe():
    ctx = PrecisionContext(80)
    expected = gamma(Fraction(1, 7), ctx)
    results = []

    def work():
        results.append(gamma(Fraction(1, 7), ctx))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)
