"""Exact identity suite over all lengths ``1..n_max``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from . import krawtchouk as kr
from .kernels import ball_volume, ball_volume_sq_sum, ball_volume_sum, closed_form_checks, lambda_eval, mu_t
from .report import Check

# enumerate theta on the explicit cube up to this length
THETA_ENUM_LIMIT = 8


def _flag(name: str, n: int, ok: bool) -> Check:
    return Check(name, {"n": n}, ok, True)


def _theta_checks(n: int, lam: Callable[[int], int]) -> Iterator[Check]:
    vols = [ball_volume(n, t) for t in range(n + 1)]
    theta = tuple(sum(vols) - sum(mu_t(n, w, t) for t in range(n + 1)) for w in range(n + 1))
    yield Check("theta_lambda", {"n": n}, theta, tuple(lam(w) for w in range(n + 1)))
    if n <= THETA_ENUM_LIMIT:
        from .metric_space import hamming_space, theta_metric

        S = hamming_space(n)
        enum = tuple(theta_metric(S, 0, (1 << w) - 1) for w in range(n + 1))
        yield Check("theta_enumerated", {"n": n}, enum, theta)


def _macwilliams_roundtrip(n: int) -> Check:
    A = tuple([Fraction(1)] + [Fraction(1, k + 1) for k in range(1, n + 1)])
    N = n + 1
    back = kr.macwilliams_inverse(kr.macwilliams_forward(A, N), N)
    return Check("macwilliams_roundtrip", {"n": n}, back, A)


def checks_for(n: int, lam: Callable[[int], int] | None = None) -> Iterator[Check]:
    """Every identity at length ``n``; the kernel closed forms come first."""
    if lam is None:
        lam = lambda w: lambda_eval(n, w)  # noqa: E731
    yield from closed_form_checks(n, lam)
    vols = [ball_volume(n, t) for t in range(n + 1)]
    yield Check("ball_sum", {"n": n}, sum(vols), ball_volume_sum(n))
    yield Check("ball_square_sum", {"n": n}, sum(v * v for v in vols), ball_volume_sq_sum(n))
    kernel_sum = sum(comb(n, w) * lam(w) for w in range(n + 1))
    yield Check(
        "ball_square_kernel", {"n": n}, sum(v * v for v in vols), 2 ** (2 * n - 1) * (n + 2) - kernel_sum
    )
    for i in range(1, (n + 1) // 2 + 1):
        yield kr.conj_identity(n, i)
    for k in range(1, n + 1):
        yield Check("ctr", {"n": n, "k": k}, kr.sq_sums(n)[k], -kr.kernel_transform(n, k, lam))
        yield kr.sq_sum_expansion_check(n, k)
    for t in range(n + 1):
        yield kr.mu_reconstruction_check(n, t)
    yield Check(
        "lambda_reconstruction",
        {"n": n},
        kr.lambda_hat(n).reconstruct(),
        tuple(Fraction(lam(w)) for w in range(n + 1)),
    )
    yield from kr.lambda_hat_checks(n)
    yield _flag("orthogonality", n, kr.orthogonality_check(n))
    yield _flag("symmetry", n, kr.symmetry_check(n))
    yield _flag("generating_function", n, kr.generating_function_check(n))
    for k in range(n + 1):
        yield kr.rodrigues_check(n, k)
    for i in range(n + 1):
        yield kr.square_expansion_check(n, i)
    yield _macwilliams_roundtrip(n)
    yield from _theta_checks(n, lam)


@dataclass
class SuiteReport:
    n_max: int
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def summary(self) -> str:
        names = {}
        for c in self.checks:
            ok, total = names.get(c.name, (0, 0))
            names[c.name] = (ok + c.passed, total + 1)
        lines = [f"{name}: {ok}/{total}" for name, (ok, total) in names.items()]
        verdict = "all pass" if self.passed else f"{len(self.failures)} FAILED"
        lines.append(f"identity suite n <= {self.n_max}: {len(self.checks)} checks, {verdict}")
        return "\n".join(lines)


def verify(n_max: int, lam_factory=None, stop_on_failure: bool = False) -> SuiteReport:
    """Run :func:`checks_for` for ``n = 1..n_max``.

    ``lam_factory(n)`` may return a replacement kernel ``w -> int`` for length ``n``.
    """
    out = []
    for n in range(1, n_max + 1):
        lam = None if lam_factory is None else lam_factory(n)
        for c in checks_for(n, lam):
            out.append(c)
            if stop_on_failure and not c.passed:
                return SuiteReport(n_max, out)
    return SuiteReport(n_max, out)
