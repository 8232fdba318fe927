"""Seeded Monte-Carlo experiments on random multiset codes."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .codes import pairwise_counts, random_words, word_array
from .discrepancy import exact_variance, expected_discrepancy, variance_bound
from .errors import DomainError
from .kernels import lambda_average, lambda_values


def trial_value(n: int, N: int, seed: int) -> Fraction:
    """Exact discrepancy of ``random_code(n, N, seed)``."""
    counts = pairwise_counts(word_array(random_words(n, N, seed), n), n)
    lam = lambda_values(n)
    total = sum(int(c) * lam[d] for d, c in enumerate(counts))
    return lambda_average(n) - Fraction(total, N * N)


def _chunk(args):
    n, N, seeds = args
    return [trial_value(n, N, s) for s in seeds]


def run_trials(n: int, N: int, trials: int, seed: int = 0, threads: int | None = None) -> list[Fraction]:
    """Values for seeds ``seed, seed+1, ...``, in seed order regardless of ``threads``."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    seeds = [seed + i for i in range(trials)]
    threads = threads or os.cpu_count() or 1
    if threads == 1 or trials < 256:
        return _chunk((n, N, seeds))
    size = math.ceil(trials / threads)
    parts = [(n, N, seeds[i:i + size]) for i in range(0, trials, size)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return [v for part in pool.map(_chunk, parts) for v in part]


@dataclass(frozen=True)
class MonteCarloReport:
    n: int
    N: int
    seed: int
    values: tuple

    @property
    def trials(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> Fraction:
        return sum(self.values, Fraction(0)) / self.trials

    @property
    def variance(self) -> Fraction | None:
        """Unbiased sample variance (``None`` for a single trial)."""
        if self.trials < 2:
            return None
        mu = self.mean
        return sum(((v - mu) ** 2 for v in self.values), Fraction(0)) / (self.trials - 1)

    @property
    def standard_error(self) -> float | None:
        var = self.variance
        return None if var is None else math.sqrt(var / self.trials)

    @property
    def expected(self) -> Fraction:
        return expected_discrepancy(self.n, self.N)

    @property
    def variance_bound(self) -> Fraction:
        return variance_bound(self.n, self.N)

    @property
    def exact_variance(self) -> Fraction:
        return exact_variance(self.n, self.N)

    @property
    def z_score(self) -> float | None:
        se = self.standard_error
        if not se:
            return None
        return float(self.mean - self.expected) / se

    @property
    def mean_ok(self) -> bool | None:
        z = self.z_score
        return None if z is None else abs(z) <= 3

    @property
    def variance_ok(self) -> bool | None:
        var = self.variance
        return None if var is None else var <= self.variance_bound


def monte_carlo(n: int, N: int, trials: int, seed: int = 0, threads: int | None = None) -> MonteCarloReport:
    return MonteCarloReport(n, N, seed, tuple(run_trials(n, N, trials, seed, threads)))
