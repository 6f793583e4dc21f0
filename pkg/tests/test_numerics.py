import random

import pytest
from fractions import Fraction
from mpmath import mpf

from binsum.numerics import (
    Comparison,
    certified_compare,
    exact_fraction,
    rational_to_real,
    slack_value,
    to_real,
)
from binsum.asymptotics import supercritical_error_bound


def test_to_real_exact_small_values():
    assert to_real(0, 128) == 0
    assert to_real(-7, 128) == -7
    assert to_real(12345, 53) == 12345


def test_to_real_power_of_two_exact_at_low_precision():
    # 2**100 is exactly representable at any precision
    assert to_real(2**100, 64) == mpf(2) ** 100
    assert to_real(-(2**100), 64) == -(mpf(2) ** 100)


def test_to_real_one_ulp_and_sign():
    n = 2**100 + 1
    x = to_real(n, 64)
    assert abs(exact_fraction(x) - n) <= Fraction(2) ** (100 - 63)
    assert x > 0
    assert to_real(-n, 64) < 0


def test_to_real_monotone_rounding():
    rng = random.Random(7)
    values = sorted(rng.randrange(-(10**40), 10**40) for _ in range(200))
    for prec in (53, 64, 128):
        images = [to_real(v, prec) for v in values]
        assert all(a <= b for a, b in zip(images, images[1:]))


def test_to_real_rejects_tiny_precision():
    with pytest.raises(ValueError):
        to_real(1, 16)


def test_certified_compare_trivial_cases():
    s = mpf("0.1")
    assert certified_compare(1, 2, s) is Comparison.CERTIFIED_LESS
    assert certified_compare(2, 1, s) is Comparison.CERTIFIED_GREATER
    assert certified_compare(1, 1, s) is Comparison.INDETERMINATE


def test_certified_compare_tight_threshold_value():
    assert certified_compare(mpf("0.9999978502"), 1, mpf("1e-9")) is Comparison.CERTIFIED_LESS


def test_certified_compare_negative_slack_rejected():
    with pytest.raises(ValueError):
        certified_compare(1, 2, -1)


def test_certified_compare_never_contradicts_itself():
    rng = random.Random(11)
    for _ in range(300):
        a = mpf(rng.uniform(-5, 5))
        b = mpf(rng.uniform(-5, 5))
        s = mpf(rng.uniform(0, 1))
        forward = certified_compare(a, b, s)
        backward = certified_compare(b, a, s)
        if forward is Comparison.CERTIFIED_LESS:
            assert backward is Comparison.CERTIFIED_GREATER
        if forward is Comparison.CERTIFIED_GREATER:
            assert backward is Comparison.CERTIFIED_LESS


def test_certified_compare_is_exact_on_dyadics():
    # gap below the slack on either side must be indeterminate, never certified
    a = mpf(1)
    slack = mpf(2) ** -40
    just_above = a + mpf(2) ** -41
    assert certified_compare(a, just_above, slack) is Comparison.INDETERMINATE
    well_above = a + mpf(2) ** -39
    assert certified_compare(a, well_above, slack) is Comparison.CERTIFIED_LESS


def test_doubling_precision_never_flips_verdicts():
    slack = slack_value(40)
    for r_num in (6, 7, 13):
        r = Fraction(r_num)
        low = supercritical_error_bound(r, 241, 64)
        high = supercritical_error_bound(r, 241, 256)
        v_low = certified_compare(low, 1, slack)
        v_high = certified_compare(high, 1, slack)
        assert v_low is v_high is Comparison.CERTIFIED_LESS


def test_rational_to_real_accuracy():
    q = Fraction(1, 3)
    x = rational_to_real(q, 128)
    assert abs(exact_fraction(x) - q) < Fraction(1, 2**126)
