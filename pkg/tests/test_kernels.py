from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from codedisc.errors import DomainError, ResourceLimitError
from codedisc.kernels import (
    LambdaProfile,
    ball_volume,
    ball_volume_sq_sum,
    ball_volume_sum,
    closed_form_checks,
    lambda_average,
    lambda_brute,
    lambda_eval,
    lambda_values,
    mu_t,
)


def test_lambda_small_values():
    assert lambda_eval(3, 0) == 0
    assert lambda_eval(3, 1) == 4
    assert lambda_eval(3, 3) == 6
    assert lambda_values(3) == (0, 4, 4, 6)


def test_lambda_domain():
    with pytest.raises(DomainError):
        lambda_eval(3, 4)
    with pytest.raises(DomainError):
        lambda_eval(3, -1)


def test_lambda_brute_examples():
    assert lambda_brute(2, "00", "00") == 0
    assert lambda_brute(3, "000", "110") == 4
    assert lambda_brute(4, "0000", "1111") == lambda_eval(4, 4) == 12


def test_lambda_brute_limit():
    with pytest.raises(ResourceLimitError):
        lambda_brute(6, 0, 1, limit=5)


@pytest.mark.parametrize("n", range(1, 9))
def test_lambda_brute_matches_closed_form_all_pairs(n):
    for y in range(2**n):
        assert lambda_brute(n, 0, y) == lambda_eval(n, bin(y).count("1"))


@given(st.integers(9, 14), st.data())
def test_lambda_brute_random_pairs(n, data):
    x = data.draw(st.integers(0, 2**n - 1))
    y = data.draw(st.integers(0, 2**n - 1))
    assert lambda_brute(n, x, y) == lambda_eval(n, bin(x ^ y).count("1"))


def test_lambda_average_values():
    assert lambda_average(1) == Fraction(1, 2)
    assert lambda_average(3) == Fraction(15, 4)
    # average over all ordered pairs of the cube, by enumeration
    n = 3
    total = sum(lambda_brute(n, x, y) for x, y in product(range(8), repeat=2))
    assert Fraction(total, 64) == lambda_average(3)
    assert lambda_average(15) == Fraction(sum(comb(15, w) * lambda_eval(15, w) for w in range(16)), 2**15)


@pytest.mark.parametrize("n", range(1, 61))
def test_profile_invariants(n):
    prof = LambdaProfile.of(n)
    assert prof.check_invariants()
    lam = prof.values
    for i in range(1, n // 2 + 1):
        assert lam[2 * i - 1] == lam[2 * i]
        if 2 * i + 1 <= n:
            assert Fraction(lam[2 * i + 1], 2 * i + 1) == Fraction(lam[2 * i], 2 * i)
    assert all(a <= b for a, b in zip(lam[1:], lam[2:]))


def test_closed_form_small():
    g = closed_form_checks(3)
    assert g.passed
    plain, alt = g.checks
    assert plain.lhs == 30 and alt.lhs == 6
    assert closed_form_checks(1).checks[0].lhs == 1


@pytest.mark.parametrize("n", range(1, 41))
def test_closed_form_identities(n):
    assert closed_form_checks(n).passed


def test_closed_form_detects_broken_kernel():
    broken = closed_form_checks(4, lam=lambda w: lambda_eval(4, w) + (w == 3))
    assert not broken.passed


def test_mu_examples():
    assert mu_t(5, 0, 5) == 32
    assert mu_t(3, 1, 1) == 2
    with pytest.raises(DomainError):
        mu_t(3, 4, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_mu_matches_set_enumeration(n):
    pts = range(2**n)
    for w in range(n + 1):
        y = (1 << w) - 1
        for t in range(n + 1):
            count = sum(1 for u in pts if bin(u).count("1") <= t and bin(u ^ y).count("1") <= t)
            assert mu_t(n, w, t) == count


@pytest.mark.parametrize("n", range(1, 15))
def test_mu_sum_relation(n):
    for w in range(n + 1):
        assert sum(mu_t(n, w, t) for t in range(n + 1)) + lambda_eval(n, w) == 2 ** (n - 1) * (n + 2)


def test_ball_volume_examples():
    assert ball_volume(3, 0) == 1
    assert ball_volume_sq_sum(2) == 26
    assert ball_volume_sum(3) == 20


@pytest.mark.parametrize("n", range(1, 15))
def test_ball_sums_termwise(n):
    vols = [ball_volume(n, t) for t in range(n + 1)]
    assert sum(vols) == ball_volume_sum(n)
    assert sum(v * v for v in vols) == ball_volume_sq_sum(n)
