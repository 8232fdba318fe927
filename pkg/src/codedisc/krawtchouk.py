"""
Binary Krawtchouk polynomials and the transforms built on them.

Normalization: ``K_k(0) = C(n, k)``, i.e. the generating function is
``sum_k K_k(x) z^k = (1 + z)^(n - x) (1 - z)^x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import DomainError
from .kernels import ball_volume, lambda_average, lambda_values, mu_t
from .report import Check, CheckGroup


def kraw_eval(n: int, k: int, x: int) -> int:
    """``K_k^(n)(x) = sum_i (-1)^i C(x, i) C(n - x, k - i)`` by direct summation."""
    if not (0 <= k <= n and 0 <= x <= n):
        raise DomainError(f"need 0 <= k, x <= n; got n={n}, k={k}, x={x}")
    return sum((-1) ** i * comb(x, i) * comb(n - x, k - i) for i in range(k + 1))


@dataclass(frozen=True)
class KrawtchoukTable:
    """All values ``K[k][i] = K_k^(n)(i)`` for ``0 <= k, i <= n``."""

    n: int
    K: tuple

    def __getitem__(self, k):
        return self.K[k]

    def column(self, x: int) -> tuple:
        return tuple(row[x] for row in self.K)


@lru_cache(maxsize=None)
def kraw_table(n: int) -> KrawtchoukTable:
    """Build the table with the three-term recurrence in ``k``.

    ``(k+1) K_{k+1}(x) = (n - 2x) K_k(x) - (n - k + 1) K_{k-1}(x)``
    """
    if n < 0:
        raise DomainError(f"n={n} must be nonnegative")
    rows = [[1] * (n + 1)]
    if n >= 1:
        rows.append([n - 2 * x for x in range(n + 1)])
    for k in range(1, n):
        nxt = []
        for x in range(n + 1):
            num = (n - 2 * x) * rows[k][x] - (n - k + 1) * rows[k - 1][x]
            q, r = divmod(num, k + 1)
            assert r == 0
            nxt.append(q)
        rows.append(nxt)
    return KrawtchoukTable(n, tuple(tuple(r) for r in rows))


def generating_function_check(n: int) -> bool:
    """Compare each table column with the coefficients of ``(1+z)^(n-x) (1-z)^x``."""
    table = kraw_table(n)
    for x in range(n + 1):
        poly = [1]
        for factor in [(1, 1)] * (n - x) + [(1, -1)] * x:
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i] += c * factor[0]
                nxt[i + 1] += c * factor[1]
            poly = nxt
        if tuple(poly) != table.column(x):
            return False
    return True


def orthogonality_check(n: int) -> bool:
    K = kraw_table(n)
    for i in range(n + 1):
        for j in range(i, n + 1):
            s = sum(comb(n, l) * K[i][l] * K[j][l] for l in range(n + 1))
            expected = 2**n * comb(n, i) if i == j else 0
            if s != expected:
                return False
    return True


def symmetry_check(n: int) -> bool:
    """``C(n,i) K_k(i) = C(n,k) K_i(k)`` and ``K_k(n-x) = (-1)^k K_k(x)``."""
    K = kraw_table(n)
    for k in range(n + 1):
        for i in range(n + 1):
            if comb(n, i) * K[k][i] != comb(n, k) * K[i][k]:
                return False
            if K[k][n - i] != (-1) ** k * K[k][i]:
                return False
    return True


def rodrigues_check(n: int, k: int) -> Check:
    """``C(n,x) K_k(x) = C(n,k) nabla^k C(n-k, x)`` for all ``x``, as one check."""
    if not 0 <= k <= n:
        raise DomainError(f"k={k} outside 0..{n}")
    K = kraw_table(n)

    def f(x):
        return comb(n - k, x) if x >= 0 else 0

    # nabla^k f(x) = sum_j (-1)^j C(k, j) f(x - j)
    lhs = tuple(comb(n, x) * K[k][x] for x in range(n + 1))
    rhs = tuple(
        comb(n, k) * sum((-1) ** j * comb(k, j) * f(x - j) for j in range(k + 1))
        for x in range(n + 1)
    )
    return Check("rodrigues", {"n": n, "k": k}, lhs, rhs)


def square_expansion(n: int, i: int) -> tuple:
    """Coefficients of ``K_i^2`` on ``K_0, K_2, K_4, ...``."""
    if not 0 <= i <= n:
        raise DomainError(f"i={i} outside 0..{n}")
    return tuple(comb(2 * k, k) * comb(n - 2 * k, i - k) for k in range(min(i, n // 2) + 1))


def square_expansion_check(n: int, i: int) -> Check:
    K = kraw_table(n)
    coeffs = square_expansion(n, i)
    lhs = tuple(K[i][x] ** 2 for x in range(n + 1))
    rhs = tuple(sum(c * K[2 * k][x] for k, c in enumerate(coeffs)) for x in range(n + 1))
    return Check("square_expansion", {"n": n, "i": i}, lhs, rhs)


def _as_fractions(vec):
    return [Fraction(v) for v in vec]


def macwilliams_forward(A: Sequence, N) -> tuple:
    """Dual distribution ``A_perp[w] = (1/N) sum_i K_w(i) A[i]``."""
    if N <= 0:
        raise DomainError(f"N={N} must be positive")
    n = len(A) - 1
    K = kraw_table(n)
    A = _as_fractions(A)
    return tuple(sum(K[w][i] * A[i] for i in range(n + 1)) / N for w in range(n + 1))


def macwilliams_inverse(A_perp: Sequence, N) -> tuple:
    """Inverse transform ``A[i] = (N / 2^n) sum_w K_i(w) A_perp[w]``.

    The scale follows from ``sum_w K_i(w) K_w(j) = 2^n [i == j]``.
    """
    if N <= 0:
        raise DomainError(f"N={N} must be positive")
    n = len(A_perp) - 1
    K = kraw_table(n)
    Ap = _as_fractions(A_perp)
    scale = Fraction(N, 2**n)
    return tuple(scale * sum(K[i][w] * Ap[w] for w in range(n + 1)) for i in range(n + 1))


def mu_coefficients(n: int, t: int) -> tuple:
    """Krawtchouk coefficients ``c_k(t)`` of the radius-``t`` ball indicator.

    ``mu_t(w) = 2^-n sum_k c_k(t)^2 K_k(w)``.
    """
    if not 0 <= t <= n:
        raise DomainError(f"t={t} outside 0..{n}")
    if t == n:
        return (2**n,) + (0,) * n
    Km = kraw_table(n - 1)
    return (ball_volume(n, t),) + tuple(Km[t][k - 1] for k in range(1, n + 1))


def mu_reconstruct(n: int, t: int) -> tuple:
    """``mu_t(w)`` for ``w = 0..n`` rebuilt from :func:`mu_coefficients`."""
    c = mu_coefficients(n, t)
    K = kraw_table(n)
    out = []
    for w in range(n + 1):
        s = sum(c[k] ** 2 * K[k][w] for k in range(n + 1))
        out.append(Fraction(s, 2**n))
    return tuple(out)


@lru_cache(maxsize=None)
def sq_sums(n: int) -> tuple:
    """``S_k = sum_{t<n} K_t^(n-1)(k-1)^2`` for ``k = 1..n`` (index 0 unused)."""
    Km = kraw_table(n - 1)
    return (None,) + tuple(sum(Km[t][k - 1] ** 2 for t in range(n)) for k in range(1, n + 1))



@dataclass(frozen=True)
class LambdaHat:
    n: int
    coeffs: tuple

    def __getitem__(self, k):
        return self.coeffs[k]

    @property
    def middle(self) -> Fraction:
        if self.n % 2 == 0:
            raise DomainError("middle coefficient defined for odd n only")
        return self.coeffs[(self.n + 1) // 2]

    def reconstruct(self) -> tuple:
        K = kraw_table(self.n)
        return tuple(
            sum(self.coeffs[k] * K[k][w] for k in range(self.n + 1)) for w in range(self.n + 1)
        )


@lru_cache(maxsize=None)
def lambda_hat(n: int) -> LambdaHat:
    """Krawtchouk coefficients of the distance kernel."""
    if n < 1:
        raise DomainError(f"n={n} must be positive")
    S = sq_sums(n)
    coeffs = (lambda_average(n),) + tuple(Fraction(-S[k], 2**n) for k in range(1, n + 1))
    return LambdaHat(n, coeffs)


def kernel_transform(n: int, i: int, lam=None) -> int:
    """``sum_w K_w^(n)(i) lambda(w)``, the inner sum of the dual-domain formula."""
    lam = lambda_values(n) if lam is None else [lam(w) for w in range(n + 1)]
    K = kraw_table(n)
    return sum(K[w][i] * lam[w] for w in range(n + 1))


def conj_identity(n: int, i: int) -> Check:
    """Kernel transform at ``i`` against its closed form via ``K^(n-1)`` at ``2i - 2``."""
    if not (1 <= i and 2 * i <= n + 1):
        raise DomainError(f"need 1 <= i <= (n+1)/2; got n={n}, i={i}")
    lhs = kernel_transform(n, i)
    Km = kraw_table(n - 1)
    rhs = (-1) ** i * sum(Km[w][2 * i - 2] * comb(n - 1, w) for w in range(n))
    return Check("conj", {"n": n, "i": i}, lhs, rhs)


def ctr_identity(n: int, k: int) -> Check:
    """``sum_t K_t^(n-1)(k-1)^2 = -sum_w lambda(w) K_w^(n)(k)``."""
    if not 1 <= k <= n:
        raise DomainError(f"k={k} outside 1..{n}")
    return Check("ctr", {"n": n, "k": k}, sq_sums(n)[k], -kernel_transform(n, k))


def sq_sum_expansion_check(n: int, k: int) -> Check:
    """``S_k`` against its even-degree expansion in the ``K^(n-1)`` basis."""
    Km = kraw_table(n - 1)
    rhs = sum(
        2 ** (n - 1 - 2 * i) * comb(2 * i, i) * Km[2 * i][k - 1] for i in range((n - 1) // 2 + 1)
    )
    return Check("sq_sum_expansion", {"n": n, "k": k}, sq_sums(n)[k], rhs)


def mu_reconstruction_check(n: int, t: int) -> Check:
    return Check(
        "mu_reconstruction",
        {"n": n, "t": t},
        mu_reconstruct(n, t),
        tuple(Fraction(mu_t(n, w, t)) for w in range(n + 1)),
    )


def lambda_reconstruction_check(n: int) -> Check:
    return Check(
        "lambda_reconstruction",
        {"n": n},
        lambda_hat(n).reconstruct(),
        tuple(Fraction(v) for v in lambda_values(n)),
    )


def lambda_hat_checks(n: int) -> CheckGroup:
    """Sign, mirror symmetry and middle value of the kernel coefficients."""
    h = lambda_hat(n)
    checks = [Check("lambda_hat_negative", {"n": n}, all(h[k] < 0 for k in range(1, n + 1)), True)]
    if n % 2 == 0:
        pairs = [(i, n - i + 1) for i in range(1, n // 2 + 1)]
    else:
        m = (n + 1) // 2
        pairs = [(m - i, m + i) for i in range(1, (n - 1) // 2 + 1)]
        checks.append(
            Check("lambda_hat_middle", {"n": n}, h[m], Fraction(-comb(n - 1, (n - 1) // 2), 2**n))
        )
        checks.append(
            Check("lambda_hat_max_at_middle", {"n": n}, max(h.coeffs[1:]), h[m])
        )
    checks.append(
        Check(
            "lambda_hat_symmetry",
            {"n": n},
            tuple(h[a] for a, _ in pairs),
            tuple(h[b] for _, b in pairs),
        )
    )
    return CheckGroup("lambda_hat", tuple(checks))

