"""
Closed-form kernels on the binary Hamming cube.

All quantities are exact: integers, or :class:`fractions.Fraction` where a
division is involved.  The distance kernel ``lambda`` is

    lambda(x, y) = 1/2 * sum_u |d(x, u) - d(y, u)|

and depends only on ``w = d(x, y)``.  ``mu_t`` is the size of the
intersection of two radius-``t`` balls whose centers are ``w`` apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import DomainError, ResourceLimitError
from .report import Check, CheckGroup

ORACLE_LIMIT = 20


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise DomainError(f"{name}={value} outside {lo}..{hi}")


def lambda_eval(n: int, w: int) -> int:
    """Value of the distance kernel at Hamming distance ``w`` in ``{0,1}^n``."""
    _check_range("w", w, 0, n)
    if w == 0:
        return 0
    return 2 ** (n - w) * w * comb(w - 1, (w + 1) // 2 - 1)


@lru_cache(maxsize=None)
def lambda_values(n: int) -> tuple:
    """``(lambda(0), ..., lambda(n))`` as a tuple of ints."""
    if n < 1:
        raise DomainError(f"n={n} must be positive")
    return tuple(lambda_eval(n, w) for w in range(n + 1))


@dataclass(frozen=True)
class LambdaProfile:
    n: int
    values: tuple

    @classmethod
    def of(cls, n: int) -> "LambdaProfile":
        return cls(n, lambda_values(n))

    def __getitem__(self, w):
        return self.values[w]

    def check_invariants(self) -> bool:
        v, n = self.values, self.n
        if v[0] != 0:
            return False
        for i in range(1, n // 2 + 1):
            if v[2 * i - 1] != v[2 * i]:
                return False
        # nondecreasing on 1..n; strict only between the paired steps
        return all(v[w] <= v[w + 1] for w in range(1, n))


def _words_to_array(word, n):
    if isinstance(word, str):
        if len(word) != n or set(word) - {"0", "1"}:
            raise DomainError(f"{word!r} is not a binary word of length {n}")
        return int(word, 2)
    return int(word)


def lambda_brute(n: int, x, y, limit: int = ORACLE_LIMIT) -> int:
    """Evaluate ``1/2 sum_u |d(x,u) - d(y,u)|`` over all ``2^n`` points ``u``.

    ``x`` and ``y`` are bit strings or integers whose low ``n`` bits hold the word.
    """
    if n > limit:
        raise ResourceLimitError(f"n={n} exceeds oracle limit {limit}")
    xi, yi = _words_to_array(x, n), _words_to_array(y, n)
    u = np.arange(2**n, dtype=np.uint64)
    dx = np.bitwise_count(u ^ np.uint64(xi)).astype(np.int64)
    dy = np.bitwise_count(u ^ np.uint64(yi)).astype(np.int64)
    total = int(np.abs(dx - dy).sum())
    assert total % 2 == 0
    return total // 2


def lambda_average(n: int) -> Fraction:
    """Average of the kernel over all pairs of the cube, ``n C(2n,n) / 2^(n+1)``."""
    if n < 1:
        raise DomainError(f"n={n} must be positive")
    return Fraction(n * comb(2 * n, n), 2 ** (n + 1))


def closed_form_checks(n: int, lam=None) -> CheckGroup:
    """Verify the plain and alternating binomial sums of the kernel.

    ``lam`` overrides the kernel (a callable ``w -> int``); it exists so the
    suite can be exercised against deliberately broken kernels.
    """
    if lam is None:
        lam = lambda w: lambda_eval(n, w)  # noqa: E731
    plain = sum(comb(n, w) * lam(w) for w in range(n + 1))
    alt = sum((-1) ** (w + 1) * comb(n, w) * lam(w) for w in range(1, n + 1))
    return CheckGroup(
        "closed",
        (
            Check("closed", {"n": n}, plain, Fraction(n, 2) * comb(2 * n, n)),
            Check("alternating", {"n": n}, alt, comb(2 * (n - 1), n - 1)),
        ),
    )


def mu_t(n: int, w: int, t: int) -> int:
    """``|B(x,t) & B(y,t)|`` for ``d(x,y) = w``.

    A point agreeing with ``x`` off the support of ``x ^ y`` except at ``j``
    places, and differing from ``x`` at ``i`` support places, sits at distance
    ``i + j`` from ``x`` and ``w - i + j`` from ``y``.
    """
    _check_range("w", w, 0, n)
    _check_range("t", t, 0, n)
    total = 0
    for i in range(w + 1):
        for j in range(n - w + 1):
            if i + j <= t and w - i + j <= t:
                total += comb(w, i) * comb(n - w, j)
    return total


def ball_volume(n: int, t: int) -> int:
    _check_range("t", t, 0, n)
    return sum(comb(n, i) for i in range(t + 1))


def ball_volume_sum(n: int) -> int:
    return (n + 2) * 2 ** (n - 1)


def ball_volume_sq_sum(n: int) -> int:
    """Closed form of ``sum_t |B(x,t)|^2``."""
    return 2 ** (2 * n - 1) * (n + 2) - n * comb(2 * n, n) // 2
