from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from codedisc.errors import DomainError
from codedisc.kernels import ball_volume, lambda_average, lambda_values
from codedisc.krawtchouk import (
    conj_identity,
    ctr_identity,
    generating_function_check,
    kernel_transform,
    kraw_eval,
    kraw_table,
    lambda_hat,
    lambda_hat_checks,
    lambda_reconstruction_check,
    macwilliams_forward,
    macwilliams_inverse,
    mu_coefficients,
    mu_reconstruction_check,
    orthogonality_check,
    rodrigues_check,
    sq_sums,
    square_expansion,
    square_expansion_check,
    symmetry_check,
)


@pytest.mark.parametrize("n", range(1, 12))
def test_eval_special_rows(n):
    for x in range(n + 1):
        assert kraw_eval(n, 1, x) == n - 2 * x
        assert kraw_eval(n, n, x) == (-1) ** x
        assert kraw_eval(n, 0, x) == 1
    for k in range(n + 1):
        assert kraw_eval(n, k, 0) == comb(n, k)


@pytest.mark.parametrize("m", range(1, 8))
def test_eval_central_values(m):
    n = 2 * m
    for t in range(0, n + 1, 2):
        assert kraw_eval(n, t, m) == (-1) ** (t // 2) * comb(m, t // 2)


def test_eval_domain():
    with pytest.raises(DomainError):
        kraw_eval(3, 4, 0)
    with pytest.raises(DomainError):
        kraw_eval(3, 0, -1)


def test_table_n1():
    assert kraw_table(1).K == ((1, 1), (1, -1))


@pytest.mark.parametrize("n", range(1, 21))
def test_table_matches_summation(n):
    K = kraw_table(n)
    assert all(K[k][x] == kraw_eval(n, k, x) for k in range(n + 1) for x in range(n + 1))


@pytest.mark.parametrize("n", range(1, 31))
def test_orthogonality_and_symmetry(n):
    assert orthogonality_check(n)
    assert symmetry_check(n)


@pytest.mark.parametrize("n", range(1, 21))
def test_generating_function(n):
    assert generating_function_check(n)


def test_rodrigues_examples():
    assert rodrigues_check(5, 0).passed
    assert rodrigues_check(5, 2).passed
    assert rodrigues_check(8, 8).passed


def test_square_expansion_examples():
    assert square_expansion(6, 0) == (1,)
    assert square_expansion(4, 1) == (4, 2)
    K = kraw_table(4)
    assert all((4 - 2 * x) ** 2 == 4 + 2 * K[2][x] for x in range(5))
    assert square_expansion_check(6, 3).passed


def test_macwilliams_examples():
    n = 5
    full = tuple(comb(n, w) for w in range(n + 1))
    assert macwilliams_forward(full, 2**n) == (1, 0, 0, 0, 0, 0)
    single = (1, 0, 0, 0, 0, 0)
    assert macwilliams_forward(single, 1) == full
    with pytest.raises(DomainError):
        macwilliams_forward(single, 0)


@settings(max_examples=60)
@given(
    st.integers(1, 20).flatmap(
        lambda n: st.tuples(
            st.lists(st.fractions(min_value=0, max_value=50, max_denominator=30), min_size=n, max_size=n),
            st.integers(1, 2**n),
        )
    )
)
def test_macwilliams_roundtrip(data):
    tail, N = data
    A = (Fraction(1),) + tuple(tail)
    assert macwilliams_inverse(macwilliams_forward(A, N), N) == A


def test_mu_coefficients():
    n = 3
    assert mu_coefficients(n, n) == (2**n, 0, 0, 0)
    for t in range(n + 1):
        assert mu_coefficients(n, t)[0] == ball_volume(n, t)
        assert mu_reconstruction_check(n, t).passed


@pytest.mark.parametrize("n", range(1, 15))
def test_mu_reconstruction(n):
    assert all(mu_reconstruction_check(n, t).passed for t in range(n + 1))


def test_lambda_hat_n3_reconstruction():
    assert lambda_hat(3).reconstruct() == (0, 4, 4, 6)
    assert lambda_hat(3)[0] == lambda_average(3)


@pytest.mark.parametrize("n", range(1, 31))
def test_lambda_hat_properties(n):
    lh = lambda_hat(n)
    assert lh[0] == lambda_average(n)
    assert all(lh[k] == -Fraction(sq_sums(n)[k], 2**n) for k in range(1, n + 1))
    assert lambda_hat_checks(n).passed
    assert lambda_reconstruction_check(n).passed
    if n % 2:
        assert lh.middle == Fraction(-comb(n - 1, (n - 1) // 2), 2**n)


def test_conj_examples():
    assert conj_identity(7, 4).passed
    assert conj_identity(1, 1).passed
    c = conj_identity(15, 8)
    assert c.passed
    assert c.lhs == 2**15 * lambda_hat(15)[8]
    with pytest.raises(DomainError):
        conj_identity(7, 5)


def test_ctr_examples():
    for k in (1, 2, 3):
        assert ctr_identity(3, k).passed
    assert ctr_identity(10, 5).passed
    assert sq_sums(10)[5] == -(2**10) * lambda_hat(10)[5]


@pytest.mark.parametrize("n", range(1, 21))
def test_conj_ctr_all(n):
    assert all(conj_identity(n, i).passed for i in range(1, (n + 1) // 2 + 1))
    assert all(ctr_identity(n, k).passed for k in range(1, n + 1))


def test_kernel_transform_with_override():
    lam = lambda_values(6)
    assert kernel_transform(6, 2) == kernel_transform(6, 2, lam=lambda w: lam[w])
    assert kernel_transform(6, 2) != kernel_transform(6, 2, lam=lambda w: lam[w] + (w == 2))
