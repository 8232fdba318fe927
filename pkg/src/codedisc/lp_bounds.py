"""
Delsarte-type linear programs for the kernel energy of binary codes.

A code's energy ``E(Z) = sum_{k>=1} A_k lambda(k)`` is bounded above by the
primal LP over distance distributions; a lower bound on discrepancy follows
from ``D(Z) = Lambda_n - E(Z) / N``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .codes import BinaryCode, distance_distribution, dual_distribution
from .discrepancy import discrepancy_spectrum, energy
from .errors import DomainError
from .kernels import lambda_average, lambda_values
from .krawtchouk import kraw_table, lambda_hat
from .rational import fmt, parse_rational
from .simplex import EQ, GE, LE, LinearProgram, LPResult, simplex_solve


def _check_size(n: int, N: int):
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    if not 1 <= N <= 2**n:
        raise DomainError(f"need 1 <= N <= 2^n; got n={n}, N={N}")


# --------------------------------------------------------------------------
# Primal and dual programs
# --------------------------------------------------------------------------

def primal_program(n: int, N: int) -> LinearProgram:
    """Variables ``A_1..A_n``."""
    _check_size(n, N)
    K = kraw_table(n)
    lam = lambda_values(n)
    rows = [[K[i][k] for k in range(1, n + 1)] for i in range(1, n + 1)]
    senses = [GE] * n
    rhs = [-comb(n, i) for i in range(1, n + 1)]
    rows.append([1] * n)
    senses.append(EQ)
    rhs.append(N - 1)
    return LinearProgram(list(lam[1:]), rows, senses, rhs, names=tuple(f"A{k}" for k in range(1, n + 1)))


def primal_discrepancy_lp(n: int, N: int) -> LPResult:
    """Largest energy permitted by the Delsarte constraints; ``solution[k-1] = A_k``."""
    return simplex_solve(primal_program(n, N))


def lp_discrepancy_bound(n: int, N: int) -> Fraction:
    """``Lambda_n - E*(n, N) / N``, a lower bound for every code of size ``N``."""
    res = primal_discrepancy_lp(n, N)
    return lambda_average(n) - res.value / N


def dual_program(n: int, N: int) -> LinearProgram:
    """Variables ``h_0..h_n``; maximizes ``N h_0 - h(0)``, the negated certificate bound."""
    _check_size(n, N)
    K = kraw_table(n)
    lam = lambda_values(n)
    objective = [N - 1] + [-comb(n, i) for i in range(1, n + 1)]
    rows = [[K[i][k] for i in range(n + 1)] for k in range(1, n + 1)]
    return LinearProgram(
        objective, rows, [LE] * n, [-lam[k] for k in range(1, n + 1)], free=(0,),
        names=tuple(f"h{i}" for i in range(n + 1)),
    )


def dual_lp(n: int, N: int) -> tuple[Fraction, "DualCertificate"]:
    """Smallest certificate bound and an optimal certificate."""
    res = simplex_solve(dual_program(n, N))
    if not res.optimal:
        raise DomainError(f"dual program is {res.status}")
    return -res.value, DualCertificate(n, N, res.solution)


# --------------------------------------------------------------------------
# Certificates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DualCertificate:
    """Polynomial ``h(x) = sum_i h_i K_i(x)`` with energy bound ``h(0) - N h_0``."""

    n: int
    N: int
    h: tuple

    def __post_init__(self):
        if len(self.h) != self.n + 1:
            raise DomainError(f"need {self.n + 1} coefficients, got {len(self.h)}")
        object.__setattr__(self, "h", tuple(Fraction(v) for v in self.h))

    @property
    def values(self) -> tuple:
        K = kraw_table(self.n)
        return tuple(
            sum((hi * K[i][x] for i, hi in enumerate(self.h)), Fraction(0)) for x in range(self.n + 1)
        )

    @property
    def bound(self) -> Fraction:
        return self.values[0] - self.N * self.h[0]

    def violations(self) -> list:
        """Universal-regime failures as ``("coeff", i)`` or ``("value", k)``."""
        lam = lambda_values(self.n)
        vals = self.values
        out = [("coeff", i) for i in range(1, self.n + 1) if self.h[i] < 0]
        out += [("value", k) for k in range(1, self.n + 1) if vals[k] > -lam[k]]
        return out

    @property
    def feasible(self) -> bool:
        return not self.violations()

    def discrepancy_bound(self) -> Fraction:
        return lambda_average(self.n) - self.bound / self.N

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "N": self.N,
                "h": [str(v) for v in self.h],
                "feasible": self.feasible,
                "bound": str(self.bound),
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "DualCertificate":
        doc = json.loads(text)
        try:
            cert = cls(int(doc["n"]), int(doc["N"]), tuple(parse_rational(v) for v in doc["h"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed certificate: {exc}") from exc
        if "bound" in doc and parse_rational(doc["bound"]) != cert.bound:
            raise DomainError("stored bound does not match coefficients")
        return cert


@dataclass(frozen=True)
class CertificateReport:
    certificate: DualCertificate
    feasible: bool
    violations: tuple
    bound: Fraction
    code: str | None = None
    energy: Fraction | None = None
    restricted_feasible: bool | None = None
    slackness: bool | None = None

    @property
    def tight(self) -> bool | None:
        return None if self.energy is None else self.energy == self.bound

    def __str__(self) -> str:
        lines = [
            f"certificate n={self.certificate.n} N={self.certificate.N}",
            f"  universal feasible: {self.feasible}",
            f"  energy bound: {fmt(self.bound)}",
            f"  discrepancy bound: {fmt(self.certificate.discrepancy_bound())}",
        ]
        if self.violations:
            lines.append("  violations: " + ", ".join(f"{kind} {i}" for kind, i in self.violations))
        if self.energy is not None:
            lines += [
                f"  code {self.code}: energy {fmt(self.energy)}",
                f"  restricted feasible: {self.restricted_feasible}",
                f"  complementary slackness: {self.slackness}",
            ]
        return "\n".join(lines)


def check_certificate(n: int, N: int, h: Sequence, code: BinaryCode | None = None) -> CertificateReport:
    cert = DualCertificate(n, N, tuple(h))
    report = dict(
        certificate=cert,
        feasible=cert.feasible,
        violations=tuple(cert.violations()),
        bound=cert.bound,
    )
    if code is not None:
        if (code.n, code.N) != (n, N):
            raise DomainError(f"code has (n, N) = ({code.n}, {code.N}), certificate ({n}, {N})")
        dd = distance_distribution(code)
        dual = dual_distribution(code)
        lam = lambda_values(n)
        vals = cert.values
        A = dd.A
        restricted = all(cert.h[k] >= 0 for k in range(1, n + 1) if dual[k] > 0) and all(
            vals[i] <= -lam[i] for i in range(1, n + 1) if A[i] > 0
        )
        slack = all(cert.h[k] * dual[k] == 0 for k in range(1, n + 1)) and all(
            A[i] * (vals[i] + lam[i]) == 0 for i in range(1, n + 1)
        )
        report.update(
            code=code.name or repr(code),
            energy=energy(dd),
            restricted_feasible=restricted,
            slackness=slack,
        )
    return CertificateReport(**report)


# --------------------------------------------------------------------------
# Closed-form certificates and bounds
# --------------------------------------------------------------------------

def constant_certificate(n: int, N: int) -> DualCertificate:
    return DualCertificate(n, N, (-lambda_values(n)[n],) + (0,) * n)


def bound_constant(n: int, N: int) -> Fraction:
    _check_size(n, N)
    return Fraction((N - 1) * lambda_values(n)[n])


def _two_term_parts(n: int):
    if n < 1 or n % 2 == 0:
        raise DomainError(f"the two-term bound needs n = 2t - 1, got n={n}")
    t = (n + 1) // 2
    lt = lambda_values(n)[t]
    h1 = Fraction(lt, 4 * t)
    h0 = Fraction(-lt) if t % 2 == 0 else -lt * (1 - Fraction(1, 2 * t))
    return t, h0, h1


def two_term_certificate(n: int, N: int) -> DualCertificate:
    """``h(x) = h_0 + h_1 (K_1(x) + K_n(x))``."""
    _, h0, h1 = _two_term_parts(n)
    h = [Fraction(0)] * (n + 1)
    h[0] = h0
    h[1] += h1
    h[n] += h1
    return DualCertificate(n, N, tuple(h))


def bound_two_term(n: int, N: int) -> Fraction:
    """Energy bound from the two-term certificate; raises if it is not feasible."""
    _check_size(n, N)
    t, _, _ = _two_term_parts(n)
    lt = lambda_values(n)[t]
    if t % 2 == 0:
        value = lt * (N - Fraction(1, 2))
    else:
        value = Fraction(lt, n + 1) * (N * n - Fraction(n - 1, 2))
    cert = two_term_certificate(n, N)
    if cert.bound != value:
        raise ArithmeticError(f"two-term closed form {value} != certificate bound {cert.bound}")
    if not cert.feasible:
        raise DomainError(f"two-term certificate is infeasible for n={n}: {cert.violations()}")
    return value


def hamming_type_certificate(n: int, N: int) -> DualCertificate:
    """``h_j = lhat_mid - lhat_j`` with ``mid = (n+1)/2``."""
    if n < 1 or n % 2 == 0:
        raise DomainError(f"the Hamming-type bound needs odd n, got n={n}")
    lh = lambda_hat(n).coeffs
    mid = lh[(n + 1) // 2]
    return DualCertificate(n, N, tuple(mid - c for c in lh))


def bound_hamming_type(n: int, N: int) -> Fraction:
    _check_size(n, N)
    if n % 2 == 0:
        raise DomainError(f"the Hamming-type bound needs odd n, got n={n}")
    value = N * lambda_average(n) - (1 - Fraction(N, 2**n)) * comb(n - 1, (n - 1) // 2)
    cert = hamming_type_certificate(n, N)
    if cert.bound != value:
        raise ArithmeticError(f"Hamming-type closed form {value} != certificate bound {cert.bound}")
    return value


def hamming_type_discrepancy_bound(n: int, N: int) -> Fraction:
    """``-(2^n / N - 1) * lhat_mid``."""
    _check_size(n, N)
    if n % 2 == 0:
        raise DomainError(f"the Hamming-type bound needs odd n, got n={n}")
    return -(Fraction(2**n, N) - 1) * lambda_hat(n).coeffs[(n + 1) // 2]


# --------------------------------------------------------------------------
# Optimality of specific codes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MinimizerReport:
    code: str
    n: int
    N: int
    discrepancy: Fraction
    lp_bound: Fraction
    lp_distribution: tuple

    @property
    def optimal(self) -> bool:
        return self.discrepancy == self.lp_bound

    @property
    def gap(self) -> Fraction:
        return self.discrepancy - self.lp_bound

    def __str__(self) -> str:
        verdict = "LP-optimal" if self.optimal else f"not optimal, gap {fmt(self.gap)}"
        return (
            f"{self.code} (n={self.n}, N={self.N}): D = {fmt(self.discrepancy)}, "
            f"LP bound {fmt(self.lp_bound)}: {verdict}"
        )


def certify_minimizer(code: BinaryCode) -> MinimizerReport:
    res = primal_discrepancy_lp(code.n, code.N)
    d = discrepancy_spectrum(distance_distribution(code))
    bound = lambda_average(code.n) - res.value / code.N
    return MinimizerReport(code.name or repr(code), code.n, code.N, d, bound, res.solution)


def optimal_face_is_point(n: int, N: int) -> bool:
    """True if the primal LP has a unique optimal distribution.

    Each ``A_k`` is minimized and maximized over the optimal face.
    """
    base = primal_program(n, N)
    opt = simplex_solve(base).value
    rows = list(base.rows) + [list(base.objective)]
    senses = list(base.senses) + [EQ]
    rhs = list(base.rhs) + [opt]
    for k in range(n):
        for sign in (1, -1):
            obj = [sign if j == k else 0 for j in range(n)]
            lo_hi = simplex_solve(LinearProgram(obj, rows, senses, rhs))
            if sign == 1:
                hi = lo_hi.value
            else:
                lo = -lo_hi.value
        if hi != lo:
            return False
    return True


# --------------------------------------------------------------------------
# Binomial-moment expansion of lambda
# --------------------------------------------------------------------------

def binomial_moment_coeffs(n: int, j_max: int | None = None) -> tuple:
    """``a_j`` with ``lambda(w) = sum_j C(w, j) a_j``; index 0 is ``a_0 = 0``."""
    lam = lambda_values(n)
    j_max = n if j_max is None else j_max
    if not 0 <= j_max <= n:
        raise DomainError(f"j_max must lie in 0..{n}")
    return tuple(
        sum((-1) ** (j - w) * comb(j, w) * lam[w] for w in range(1, j + 1)) for j in range(j_max + 1)
    )


def binomial_moment_reconstructs(n: int) -> bool:
    a = binomial_moment_coeffs(n)
    lam = lambda_values(n)
    return all(sum(comb(w, j) * a[j] for j in range(w + 1)) == lam[w] for w in range(n + 1))


def finite_differences(values: Sequence[int]) -> list:
    """Rows ``Delta^k f`` for ``k = 0, 1, ...``."""
    rows = [list(values)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([b - a for a, b in zip(prev, prev[1:])])
    return rows


def even_lambda_difference_signs(n: int) -> list:
    """Set of signs found in each row ``Delta^k`` of ``-lambda(2i)``, ``i = 1..n//2``."""
    lam = lambda_values(n)
    seq = [-lam[2 * i] for i in range(1, n // 2 + 1)]
    return [{(v > 0) - (v < 0) for v in row} for row in finite_differences(seq)]


def even_lambda_sign_consistent(n: int) -> bool:
    """Every ``Delta^k(-lambda(2i))`` with ``k >= 1`` is strictly of sign ``(-1)^k``."""
    return all(signs == {(-1) ** k} for k, signs in enumerate(even_lambda_difference_signs(n)) if k)


def moment_signs_alternate(n: int) -> bool:
    """``a_j`` has sign ``(-1)^(j+1)`` for ``2 <= j <= n``."""
    a = binomial_moment_coeffs(n)
    return all(a[j] != 0 and (a[j] > 0) == (j % 2 == 1) for j in range(2, n + 1))
