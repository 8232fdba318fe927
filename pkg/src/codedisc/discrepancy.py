"""
Quadratic discrepancy of binary codes.

Three independent routes are provided and must agree exactly:

* :func:`discrepancy_brute` evaluates the definition, a sum over every
  radius ``t`` and every point ``x`` of the squared gap between the fraction
  of codewords in ``B(x, t)`` and the ball's share of the cube;
* :func:`discrepancy_spectrum` uses the distance distribution and the
  kernel ``lambda``;
* :func:`discrepancy_dual` uses the dual distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .codes import (
    BinaryCode,
    DistanceDistribution,
    DualDistribution,
    distance_distribution,
    dual_distribution,
    extend_code,
)
from .errors import DomainError, IdentityMismatchError, ResourceLimitError
from .kernels import ORACLE_LIMIT, ball_volume, lambda_average, lambda_eval, lambda_values
from .krawtchouk import kernel_transform, sq_sums
from .rational import to_sig
from .report import Check

METHODS = ("definition", "distance-spectrum", "dual-spectrum", "closed-form")


@dataclass(frozen=True)
class DiscrepancyReport:
    value: Fraction
    method: str
    code: str = ""

    def decimal(self, digits: int = 6) -> str:
        return to_sig(self.value, digits)

    def __str__(self) -> str:
        return f"{self.value} ({self.decimal()})"


# --------------------------------------------------------------------------
# Three routes
# --------------------------------------------------------------------------

def energy(dd: DistanceDistribution) -> Fraction:
    """``E_lambda(Z) = sum_{w>=1} A_w lambda(w)``."""
    lam = lambda_values(dd.n)
    return Fraction(sum(c * lam[w] for w, c in enumerate(dd.counts)), dd.N)


def discrepancy_spectrum(dd: DistanceDistribution) -> Fraction:
    return lambda_average(dd.n) - energy(dd) / dd.N


def discrepancy_dual(dual: DualDistribution) -> Fraction:
    """Dual-domain discrepancy, computed two ways and cross-checked.

    One form applies the kernel transform ``sum_w K_w(i) lambda(w)``, the
    other the sums of squares ``sum_t K_t^(n-1)(k-1)^2``.
    """
    n = dual.n
    first = -sum(dual[i] * kernel_transform(n, i) for i in range(1, n + 1)) / Fraction(2**n)
    S = sq_sums(n)
    second = sum(dual[k] * S[k] for k in range(1, n + 1)) / Fraction(2**n)
    if first != second:
        raise IdentityMismatchError(f"dual forms disagree: {first} != {second}")
    return second


def discrepancy_brute(code: BinaryCode, limit: int = ORACLE_LIMIT, chunk: int = 4096) -> Fraction:
    """Evaluate the definition directly over all ``2^n`` ball centers."""
    n, N = code.n, code.N
    if n > limit:
        raise ResourceLimitError(f"n={n} exceeds oracle limit {limit}")
    words = np.asarray(code.words, dtype=np.uint64)
    size = 1 << n
    sum_c = [0] * (n + 1)
    sum_c2 = [0] * (n + 1)
    rows = max(1, min(chunk, (1 << 22) // max(N, 1)))
    for start in range(0, size, rows):
        x = np.arange(start, min(start + rows, size), dtype=np.uint64)
        d = np.bitwise_count(x[:, None] ^ words[None, :]).astype(np.int64)
        offs = d + (n + 1) * np.arange(x.size, dtype=np.int64)[:, None]
        hist = np.bincount(offs.ravel(), minlength=x.size * (n + 1)).reshape(x.size, n + 1)
        c = np.cumsum(hist, axis=1)  # c[x, t] = #{j : d(x, z_j) <= t}
        for t in range(n + 1):
            col = c[:, t]
            sum_c[t] += int(col.sum())
            sum_c2[t] += int((col * col).sum())
    total = 0
    for t in range(n + 1):
        B = ball_volume(n, t)
        # sum_x (2^n c - N B)^2, expanded
        total += (size * size) * sum_c2[t] - 2 * size * N * B * sum_c[t] + size * N * N * B * B
    return Fraction(total, N * N * size * size)


def discrepancy(code: BinaryCode, method: str = "distance-spectrum", **kw) -> DiscrepancyReport:
    if method == "distance-spectrum":
        value = discrepancy_spectrum(distance_distribution(code))
    elif method == "dual-spectrum":
        value = discrepancy_dual(dual_distribution(code))
    elif method == "definition":
        value = discrepancy_brute(code, **kw)
    else:
        raise DomainError(f"unknown method {method!r}; choose from {METHODS[:3]}")
    return DiscrepancyReport(value, method, code.name)


def pair_discrepancy(n: int, w: int) -> Fraction:
    """Discrepancy of a two-word code with the words ``w`` apart."""
    return lambda_average(n) - Fraction(lambda_eval(n, w), 2)


# --------------------------------------------------------------------------
# Random codes
# --------------------------------------------------------------------------

def expected_discrepancy(n: int, N: int) -> Fraction:
    """Mean discrepancy of ``N`` independent uniform words."""
    if N < 1:
        raise DomainError(f"N={N} must be positive")
    return Fraction(n * comb(2 * n, n), N * 2 ** (n + 1))


def variance_bound(n: int, N: int) -> Fraction:
    """The published upper estimate ``(N-1)/N * Lambda_n - E[D]``, clipped at 0."""
    bound = Fraction(N - 1, N) * lambda_average(n) - expected_discrepancy(n, N)
    return max(Fraction(0), bound)


def exact_variance(n: int, N: int) -> Fraction:
    """Exact variance of the discrepancy of ``N`` i.i.d. uniform words.

    The ``C(N, 2)`` unordered pair distances are pairwise independent
    ``Binomial(n, 1/2)`` variables, so the variance is
    ``2 (N - 1) / N^3 * Var(lambda(d))``.
    """
    if N < 1:
        raise DomainError(f"N={N} must be positive")
    lam = lambda_values(n)
    mean = Fraction(sum(comb(n, w) * lam[w] for w in range(n + 1)), 2**n)
    second = Fraction(sum(comb(n, w) * lam[w] ** 2 for w in range(n + 1)), 2**n)
    return Fraction(2 * (N - 1), N**3) * (second - mean * mean)


# --------------------------------------------------------------------------
# Closed forms for named families
# --------------------------------------------------------------------------

def hamming_closed(m: int) -> Fraction:
    if m < 2:
        raise DomainError(f"m={m} must be >= 2")
    n = 2**m - 1
    return Fraction(n * comb(n - 1, (n - 1) // 2), 2**n)


def simplex_closed(m: int) -> Fraction:
    if m < 2:
        raise DomainError(f"m={m} must be >= 2")
    n = 2**m - 1
    return lambda_average(n) - Fraction(n * lambda_eval(n, (n + 1) // 2), 2**m)


def subcube_closed(n: int) -> Fraction:
    """Discrepancy of the codimension-one subcube of ``{0,1}^n``."""
    if n < 2:
        raise DomainError(f"n={n} must be >= 2")
    return Fraction(n * comb(2 * n, n), 2 ** (n + 1)) - Fraction(
        (n - 1) * comb(2 * n - 2, n - 1), 2 ** (n - 1)
    )


def extension_identity(code: BinaryCode) -> Check:
    """``D(Z_ext) = 2 D(Z) + C(2n, n) / 2^(n+1)`` for odd ``n``."""
    n = code.n
    if n % 2 == 0:
        raise DomainError("the extension identity applies to odd lengths")
    d = discrepancy_spectrum(distance_distribution(code))
    d_ext = discrepancy_spectrum(distance_distribution(extend_code(code)))
    return Check(
        "extension", {"code": code.name, "n": n}, d_ext, 2 * d + Fraction(comb(2 * n, n), 2 ** (n + 1))
    )


# --------------------------------------------------------------------------
# Sum of distances
# --------------------------------------------------------------------------

def avg_distance(dd: DistanceDistribution) -> Fraction:
    """Average distance over ordered pairs, ``(1/N) sum_w w A_w``."""
    return Fraction(sum(w * c for w, c in enumerate(dd.counts)), dd.N * dd.N)


def dual_avg_relation(code: BinaryCode) -> Check:
    """``<d>_Z = n/2 - A_perp_1 / 2``."""
    dd = distance_distribution(code)
    dual = dual_distribution(code)
    return Check(
        "avg_distance", {"code": code.name}, avg_distance(dd), Fraction(code.n, 2) - dual[1] / 2
    )


@dataclass(frozen=True)
class Interval:
    """A float estimate, not an exact invariant."""

    lower: float
    upper: float

    def __contains__(self, value) -> bool:
        return self.lower <= float(value) <= self.upper


def distance_sum_bounds(code: BinaryCode, c=Fraction(9, 10)) -> Interval:
    """Estimate of the discrepancy from the average distance alone."""
    n = code.n
    d = float(avg_distance(distance_distribution(code)))
    scale = 2**n / math.sqrt(math.pi * n)
    c = float(c)
    return Interval(
        scale * (c * n / 2 - math.sqrt(n * d / 2)),
        scale * (n / 2 - c * d / 2),
    )


def fu_discrepancy_bound(n: int, N: int, c=Fraction(9, 10), c_prime=None) -> float:
    """Upper estimate for codes of size ``N <= 2^(n-1)``.

    ``c_prime`` defaults to ``1 - c/2``, the value produced by inserting the
    average-distance bound ``n/2 - 2^(n-2)/N`` into the upper estimate of
    :func:`distance_sum_bounds`.
    """
    if not 1 <= N <= 2 ** (n - 1):
        raise DomainError(f"need 1 <= N <= 2^(n-1); got n={n}, N={N}")
    c = float(c)
    cp = 1 - c / 2 if c_prime is None else float(c_prime)
    return 2**n / math.sqrt(math.pi * n) * (cp * n / 2 + c * 2 ** (n - 3) / N)
