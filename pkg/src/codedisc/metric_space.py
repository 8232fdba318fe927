"""
Finite metric spaces with center-independent ball volumes.

Points are indexed ``0..P-1``; a subset ``Z`` is a sequence of indices
(repeats allowed).  All discrepancies are exact fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Sequence

import numpy as np

from .errors import DomainError, IdentityMismatchError, ParseError, ValidationError
from .kernels import mu_t
from .krawtchouk import kraw_table
from .rational import parse_rational

# Which side of the weighted identity is positive.  The definitional value
# sum_t g_t D_t^2 equals <lambda_G>_X - <lambda_G>_Z, the same orientation as
# the unweighted identity.
WEIGHTED_ORIENTATION = "space-minus-subset"


def _check_metric(dist: np.ndarray) -> int:
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise ValidationError(f"distance matrix must be square, got shape {dist.shape}")
    P = dist.shape[0]
    bad = np.argwhere(dist != dist.T)
    if bad.size:
        x, y = map(int, bad[0])
        raise ValidationError(f"not symmetric: d({x},{y}) != d({y},{x})", (x, y))
    diag = np.flatnonzero(np.diag(dist))
    if diag.size:
        x = int(diag[0])
        raise ValidationError(f"d({x},{x}) = {dist[x, x]} is not zero", (x,))
    off = dist + np.eye(P, dtype=dist.dtype)
    bad = np.argwhere(off <= 0)
    if bad.size:
        x, y = map(int, bad[0])
        raise ValidationError(f"d({x},{y}) = {dist[x, y]} must be positive", (x, y))
    for y in range(P):
        via = dist[:, y, None] + dist[None, y, :]
        bad = np.argwhere(dist > via)
        if bad.size:
            x, z = map(int, bad[0])
            raise ValidationError(
                f"triangle inequality fails: d({x},{z}) > d({x},{y}) + d({y},{z})", (x, y, z)
            )
    return int(dist.max()) if P > 1 else 0


def ball_profiles(dist: np.ndarray, n: int) -> np.ndarray:
    """``prof[x, t] = |B(x, t)|``."""
    P = dist.shape[0]
    hist = np.zeros((P, n + 1), dtype=np.int64)
    for t in range(n + 1):
        hist[:, t] = (dist == t).sum(axis=1)
    return np.cumsum(hist, axis=1)


class FiniteMetricSpace:
    """A validated distance-invariant finite metric space."""

    def __init__(self, dist, n=None):
        dist = np.array(dist, dtype=np.int64)
        diameter = _check_metric(dist)
        if n is not None and n != diameter:
            raise ValidationError(f"declared diameter {n} but largest distance is {diameter}")
        if diameter < 1:
            raise ValidationError("a space needs at least two points")
        prof = ball_profiles(dist, diameter)
        differs = np.flatnonzero((prof != prof[0]).any(axis=1))
        if differs.size:
            x = int(differs[0])
            t = int(np.flatnonzero(prof[x] != prof[0])[0])
            raise ValidationError(
                f"not distance-invariant: |B(0,{t})| = {prof[0, t]} but |B({x},{t})| = {prof[x, t]}",
                (0, x, t),
            )
        dist.setflags(write=False)
        self.dist = dist
        self.n = diameter
        self.P = dist.shape[0]
        self.volumes = tuple(int(v) for v in prof[0])

    def __repr__(self) -> str:
        return f"<FiniteMetricSpace P={self.P} diameter={self.n}>"

    def check_subset(self, Z: Sequence[int]) -> np.ndarray:
        Z = np.asarray(Z, dtype=np.int64)
        if Z.size == 0:
            raise DomainError("subset must be nonempty")
        if Z.min() < 0 or Z.max() >= self.P:
            raise DomainError(f"subset indices must lie in 0..{self.P - 1}")
        return Z

    def to_text(self) -> str:
        lines = [f"{self.P} {self.n}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.dist]
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Construction and parsing
# --------------------------------------------------------------------------

def load_space(text: str) -> FiniteMetricSpace:
    """Parse a header ``"P n"`` followed by ``P`` rows of ``P`` integers."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            rows.append((lineno, [int(tok) for tok in line]))
        except ValueError as exc:
            raise ParseError(f"non-integer entry in {raw.strip()!r}", lineno) from exc
    if not rows:
        raise ParseError("empty space file")
    lineno, header = rows[0]
    if len(header) != 2:
        raise ParseError("header must be 'P n'", lineno)
    P, n = header
    body = rows[1:]
    if len(body) != P:
        raise ParseError(f"expected {P} matrix rows, found {len(body)}")
    for lineno, row in body:
        if len(row) != P:
            raise ParseError(f"expected {P} entries, found {len(row)}", lineno)
    return FiniteMetricSpace([row for _, row in body], n)


def graph_distances(adjacency) -> np.ndarray:
    """All-pairs shortest path lengths of a connected unweighted graph."""
    adj = np.asarray(adjacency, dtype=bool)
    P = adj.shape[0]
    dist = np.full((P, P), -1, dtype=np.int64)
    for s in range(P):
        dist[s, s] = 0
        frontier = np.zeros(P, dtype=bool)
        frontier[s] = True
        seen = frontier.copy()
        d = 0
        while frontier.any():
            d += 1
            frontier = adj[frontier].any(axis=0) & ~seen
            dist[s, frontier] = d
            seen |= frontier
    if (dist < 0).any():
        raise ValidationError("graph is not connected")
    return dist


def hamming_space(n: int) -> FiniteMetricSpace:
    x = np.arange(2**n, dtype=np.uint64)
    return FiniteMetricSpace(np.bitwise_count(x[:, None] ^ x[None, :]).astype(np.int64), n)


def cycle_space(m: int) -> FiniteMetricSpace:
    i = np.arange(m)
    d = np.abs(i[:, None] - i[None, :])
    return FiniteMetricSpace(np.minimum(d, m - d))


def path_distances(m: int) -> np.ndarray:
    """Distance matrix of a path; not distance-invariant for ``m >= 3``."""
    i = np.arange(m)
    return np.abs(i[:, None] - i[None, :])


def johnson_space(v: int, k: int) -> FiniteMetricSpace:
    """``k``-subsets of a ``v``-set, distance ``|A \\ B|``."""
    subsets = [frozenset(s) for s in combinations(range(v), k)]
    dist = [[len(a - b) for b in subsets] for a in subsets]
    return FiniteMetricSpace(dist)


# --------------------------------------------------------------------------
# Kernels
# --------------------------------------------------------------------------

def _abs_diff_sums(dist: np.ndarray, values=None, chunk: int = 64) -> np.ndarray:
    """``out[x, y] = sum_u |f(d(x,u)) - f(d(y,u))|`` with ``f`` given by ``values``."""
    F = dist if values is None else np.asarray(values, dtype=np.int64)[dist]
    P = F.shape[0]
    out = np.empty((P, P), dtype=np.int64)
    for s in range(0, P, chunk):
        out[s:s + chunk] = np.abs(F[s:s + chunk, None, :] - F[None, :, :]).sum(axis=2)
    return out


def general_lambda(S: FiniteMetricSpace, x: int, y: int) -> Fraction:
    """``1/2 sum_u |d(x,u) - d(y,u)|``."""
    return Fraction(int(np.abs(S.dist[x] - S.dist[y]).sum()), 2)


def mu_matrix(S: FiniteMetricSpace) -> np.ndarray:
    """``sum_t |B(x,t) & B(y,t)|`` for all pairs."""
    out = np.zeros((S.P, S.P), dtype=np.int64)
    for t in range(S.n + 1):
        B = (S.dist <= t).astype(np.int64)
        out += B @ B.T
    return out


def theta_metric(S: FiniteMetricSpace, x: int, y: int) -> Fraction:
    """Ball-system distance ``sum_t |B(x,t)| - sum_t |B(x,t) & B(y,t)|``."""
    total = 0
    for t in range(S.n + 1):
        bx, by = S.dist[x] <= t, S.dist[y] <= t
        total += int(bx.sum()) - int((bx & by).sum())
    return Fraction(total)


def _pair_mean(M: np.ndarray, Z: np.ndarray) -> Fraction:
    sub = M[np.ix_(Z, Z)]
    return Fraction(int(sub.sum()), Z.size * Z.size)


def _space_mean(M: np.ndarray) -> Fraction:
    return Fraction(int(M.sum()), M.shape[0] * M.shape[1])


def discrepancy_definition(S: FiniteMetricSpace, Z: Sequence[int], weights=None) -> Fraction:
    """``sum_t g_t sum_x (|Z & B(x,t)| / N - |B(x,t)| / P)^2`` evaluated directly."""
    Z = S.check_subset(Z)
    N, P = Z.size, S.P
    g = [Fraction(1)] * (S.n + 1) if weights is None else list(weights.g)
    total = Fraction(0)
    for t in range(S.n + 1):
        if g[t] == 0:
            continue
        inball = S.dist[:, Z] <= t
        c = inball.sum(axis=1).astype(object)
        B = S.volumes[t]
        diff = c * P - N * B
        total += g[t] * Fraction(int((diff * diff).sum()), N * N * P * P)
    return total


def discrepancy_lambda_form(S: FiniteMetricSpace, Z: Sequence[int]) -> Fraction:
    """``<lambda>_X - <lambda>_Z``."""
    Z = S.check_subset(Z)
    two_lam = _abs_diff_sums(S.dist)
    return (_space_mean(two_lam) - _pair_mean(two_lam, Z)) / 2


def discrepancy_mu_form(S: FiniteMetricSpace, Z: Sequence[int]) -> Fraction:
    """``<mu>_Z - <mu>_X`` with ``mu = sum_t |B(x,t) & B(y,t)|``."""
    Z = S.check_subset(Z)
    mu = mu_matrix(S)
    return _pair_mean(mu, Z) - _space_mean(mu)


def general_discrepancy(S: FiniteMetricSpace, Z: Sequence[int]) -> Fraction:
    """Discrepancy via the distance kernel, cross-checked against the ball-intersection kernel."""
    via_lambda = discrepancy_lambda_form(S, Z)
    via_mu = discrepancy_mu_form(S, Z)
    if via_lambda != via_mu:
        raise IdentityMismatchError(f"kernel forms disagree: {via_lambda} != {via_mu}")
    return via_lambda


# --------------------------------------------------------------------------
# Weighted discrepancy
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightVector:
    g: tuple

    def __post_init__(self):
        g = tuple(Fraction(v) for v in self.g)
        if any(v < 0 for v in g):
            raise DomainError("weights must be nonnegative")
        object.__setattr__(self, "g", g)

    @property
    def n(self) -> int:
        return len(self.g) - 1

    @property
    def gamma(self) -> tuple:
        """Tail sums ``gamma(t) = sum_{i >= t} g_i``."""
        out, acc = [], Fraction(0)
        for v in reversed(self.g):
            acc += v
            out.append(acc)
        return tuple(reversed(out))

    @classmethod
    def ones(cls, n: int) -> "WeightVector":
        return cls((1,) * (n + 1))

    @classmethod
    def indicator(cls, n: int, t: int) -> "WeightVector":
        return cls(tuple(int(i == t) for i in range(n + 1)))


def parse_weights(text: str) -> WeightVector:
    tokens = []
    for raw in text.splitlines():
        tokens += raw.split("#", 1)[0].split()
    if not tokens:
        raise ParseError("empty weight file")
    try:
        return WeightVector(tuple(parse_rational(tok) for tok in tokens))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _scaled_gamma(G: WeightVector):
    """Integer tail sums and their common denominator."""
    gamma = G.gamma
    den = lcm(*(v.denominator for v in gamma))
    return [int(v * den) for v in gamma], den


def _require_match(S: FiniteMetricSpace, G: WeightVector):
    if G.n != S.n:
        raise DomainError(f"weight vector has length {G.n + 1}, space needs {S.n + 1}")


def weighted_lambda(S: FiniteMetricSpace, G: WeightVector, x: int, y: int) -> Fraction:
    """``1/2 sum_z |gamma(d(x,z)) - gamma(d(y,z))|``."""
    _require_match(S, G)
    gamma = G.gamma
    return sum((abs(gamma[a] - gamma[b]) for a, b in zip(S.dist[x], S.dist[y])), Fraction(0)) / 2


def weighted_discrepancy(S: FiniteMetricSpace, Z: Sequence[int], G: WeightVector) -> Fraction:
    """Weighted discrepancy ``<lambda_G>_X - <lambda_G>_Z``, checked against the definition."""
    _require_match(S, G)
    Z = S.check_subset(Z)
    gamma, den = _scaled_gamma(G)
    two_lam = _abs_diff_sums(S.dist, gamma)
    value = (_space_mean(two_lam) - _pair_mean(two_lam, Z)) / (2 * den)
    direct = discrepancy_definition(S, Z, G)
    if value != direct:
        raise IdentityMismatchError(f"weighted kernel form {value} != definition {direct}")
    return value


# Hamming-cube specializations of the weighted kernel

def weighted_lambda_hamming(n: int, G: WeightVector, w: int) -> Fraction:
    """``lambda_G(w) = sum_i C(n,i) gamma(i) - sum_t g_t mu_t(w)`` on ``{0,1}^n``."""
    if G.n != n:
        raise DomainError(f"weight vector must have {n + 1} entries")
    gamma = G.gamma
    base = sum(comb(n, i) * gamma[i] for i in range(n + 1))
    return base - sum(G.g[t] * mu_t(n, w, t) for t in range(n + 1))


def weighted_lambda_hat(n: int, G: WeightVector) -> tuple:
    """Krawtchouk coefficients of ``lambda_G``; entries ``k >= 1`` are ``<= 0``."""
    if G.n != n:
        raise DomainError(f"weight vector must have {n + 1} entries")
    mean = sum(
        (comb(n, w) * weighted_lambda_hamming(n, G, w) for w in range(n + 1)), Fraction(0)
    ) / 2**n
    Km = kraw_table(n - 1)
    rest = tuple(
        -sum((G.g[t] * Km[t][k - 1] ** 2 for t in range(n)), Fraction(0)) / 2**n
        for k in range(1, n + 1)
    )
    return (mean,) + rest


def weighted_dual_discrepancy(A_perp: Sequence, G: WeightVector) -> Fraction:
    """``2^-n sum_{k>=1} A_perp[k] sum_t g_t K_t^(n-1)(k-1)^2``."""
    n = len(A_perp) - 1
    if G.n != n:
        raise DomainError(f"weight vector must have {n + 1} entries")
    Km = kraw_table(n - 1)
    total = Fraction(0)
    for k in range(1, n + 1):
        if A_perp[k]:
            total += Fraction(A_perp[k]) * sum(
                (G.g[t] * Km[t][k - 1] ** 2 for t in range(n)), Fraction(0)
            )
    return total / 2**n


# --------------------------------------------------------------------------
# Metric association schemes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AssociationScheme:
    """Intersection numbers ``p[i, j, k]`` of a distance-regular space."""

    n: int
    valencies: tuple
    p: np.ndarray

    def intersection(self, i: int, j: int, k: int) -> int:
        return int(self.p[i, j, k])

    def check_invariants(self) -> bool:
        n, p = self.n, self.p
        if tuple(int(p[k, k, 0]) for k in range(n + 1)) != self.valencies:
            return False
        if not np.array_equal(p, p.transpose(1, 0, 2)):
            return False
        for i in range(n + 1):
            if int(p[i].sum(axis=0)[0]) != self.valencies[i]:
                return False
            for k in range(n + 1):
                if int(p[i, :, k].sum()) != self.valencies[i]:
                    return False
                for j in range(n + 1):
                    if p[i, j, k] and not abs(i - j) <= k <= i + j:
                        return False
        return True

    @property
    def size(self) -> int:
        return sum(self.valencies)


def scheme_from_space(S: FiniteMetricSpace) -> AssociationScheme:
    """Count ``p_ij(x, y)`` for every pair and require it to depend on ``d(x, y)`` only."""
    n, P, D = S.n, S.P, S.dist
    width = (n + 1) ** 2
    p = np.full((n + 1, n + 1, n + 1), -1, dtype=np.int64)
    owner = {}
    for x in range(P):
        codes = D[x][None, :] * (n + 1) + D  # row y: (d(x,u), d(y,u)) packed
        offs = codes + width * np.arange(P)[:, None]
        hist = np.bincount(offs.ravel(), minlength=P * width).reshape(P, n + 1, n + 1)
        for k in range(n + 1):
            ys = np.flatnonzero(D[x] == k)
            if ys.size == 0:
                continue
            if k not in owner:
                owner[k] = (x, int(ys[0]))
                p[:, :, k] = hist[ys[0]]
            bad = np.flatnonzero((hist[ys] != p[:, :, k]).any(axis=(1, 2)))
            if bad.size:
                y = int(ys[bad[0]])
                x0, y0 = owner[k]
                raise ValidationError(
                    f"not distance-regular: pairs ({x0},{y0}) and ({x},{y}) are both at "
                    f"distance {k} but have different intersection counts",
                    (x0, y0, x, y),
                )
    valencies = tuple(int(p[k, k, 0]) for k in range(n + 1))
    return AssociationScheme(n, valencies, p)


def class_distribution(S: FiniteMetricSpace, Z: Sequence[int]) -> tuple:
    """``A_k`` = ordered pairs of ``Z`` in class ``k``, divided by ``N``."""
    Z = S.check_subset(Z)
    counts = np.bincount(S.dist[np.ix_(Z, Z)].ravel(), minlength=S.n + 1)
    return tuple(Fraction(int(c), Z.size) for c in counts)


def _class_sums(scheme: AssociationScheme) -> list:
    """``T_k = sum_{i,j} p_ij^k |i - j| = sum_u |d(x,u) - d(y,u)|`` for ``d(x,y) = k``."""
    n = scheme.n
    idx = np.arange(n + 1)
    absdiff = np.abs(idx[:, None] - idx[None, :])
    return [int((scheme.p[:, :, k] * absdiff).sum()) for k in range(n + 1)]


def scheme_discrepancy(scheme: AssociationScheme, A: Sequence, N: int) -> Fraction:
    """Discrepancy from intersection numbers and the class distribution.

    ``1/2 * ( (1/|X|) sum_k n_k T_k - (1/N) sum_{k>=1} A_k T_k )``.
    """
    if N < 1:
        raise DomainError(f"N={N} must be positive")
    T = _class_sums(scheme)
    space = Fraction(sum(v * t for v, t in zip(scheme.valencies, T)), scheme.size)
    subset = sum((Fraction(A[k]) * T[k] for k in range(1, scheme.n + 1)), Fraction(0)) / N
    return (space - subset) / 2


def hamming_intersection_number(n: int, i: int, j: int, k: int) -> int:
    """Closed form ``C(k, (i-j+k)/2) C(n-k, (i+j-k)/2)``, zero when parity fails."""
    if (i + j - k) % 2:
        return 0
    a, b = (i - j + k) // 2, (i + j - k) // 2
    if a < 0 or b < 0 or a > k or b > n - k:
        return 0
    return comb(k, a) * comb(n - k, b)
