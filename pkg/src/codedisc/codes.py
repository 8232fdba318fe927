"""
Binary codes: construction, parsing, and distance spectra.

A word of length ``n`` is stored as a Python/NumPy integer whose binary
expansion, read as an ``n``-character string, is the word itself: the first
coordinate is the most significant bit.  Linear codes keep a basis and only
materialize their ``2^k`` words when asked.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, IdentityMismatchError, ParseError, ResourceLimitError
from .krawtchouk import macwilliams_forward, macwilliams_inverse

MAX_WORDS = 1 << 24
_MASK64 = (1 << 64) - 1


# --------------------------------------------------------------------------
# GF(2) linear algebra on integer bit vectors
# --------------------------------------------------------------------------

def gf2_echelon(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon form; the returned rows are independent."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            # keep fully reduced: clear the new pivot from earlier rows
            top = 1 << (r.bit_length() - 1)
            basis = [b ^ r if b & top else b for b in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return basis


def gf2_nullspace(rows: Sequence[int], n: int) -> list[int]:
    """Basis of ``{x : <x, r> = 0 mod 2 for every row r}`` in ``{0,1}^n``."""
    ech = gf2_echelon(rows)
    pivots = {b.bit_length() - 1: b for b in ech}
    out = []
    for free in range(n):
        if free in pivots:
            continue
        v = 1 << free
        for p, row in pivots.items():
            if row >> free & 1:
                v |= 1 << p
        out.append(v)
    return out


def word_array(words, n: int) -> np.ndarray:
    """uint64 array for ``n <= 64``, otherwise an object array of Python ints."""
    if n <= 64:
        return np.array([int(w) for w in words], dtype=np.uint64)
    arr = np.empty(len(words), dtype=object)
    arr[:] = [int(w) for w in words]
    return arr


def popcount(words: np.ndarray) -> np.ndarray:
    if words.dtype == object:
        return np.fromiter((int(w).bit_count() for w in words.ravel()), dtype=np.int64).reshape(words.shape)
    return np.bitwise_count(words)


def span(basis: Sequence[int], n: int = 64) -> np.ndarray:
    words = word_array([0], n)
    for b in basis:
        words = np.concatenate([words, words ^ word_array([b], n)])
    return words


# --------------------------------------------------------------------------
# Code container
# --------------------------------------------------------------------------

class BinaryCode:
    """A list of ``N`` binary words of length ``n``.

    Parameters
    ----------
    n : int
        Word length.
    words : iterable of int, optional
        Explicit words.  Required unless ``basis`` is given.
    basis : sequence of int, optional
        Independent generators of a linear code.
    multiset : bool
        Allow repeated words (used for i.i.d. random codes).
    name : str
        Display label.
    """

    def __init__(self, n, words=None, *, basis=None, multiset=False, name=""):
        if n < 1:
            raise DomainError(f"n={n} must be positive")
        self.n = int(n)
        self.name = name
        self.multiset = multiset
        limit = 1 << self.n
        if basis is not None:
            basis = tuple(int(b) for b in basis)
            if any(not 0 < b < limit for b in basis):
                raise DomainError("basis vectors must be nonzero words of length n")
            if len(gf2_echelon(basis)) != len(basis):
                raise DomainError("basis vectors are linearly dependent")
        self.basis = basis
        if words is None:
            if basis is None:
                raise DomainError("need words or a basis")
            self._words = None
        else:
            arr = word_array(list(words), self.n)
            if arr.size == 0:
                raise DomainError("a code needs at least one word")
            if int(arr.max()) >= limit:
                raise DomainError(f"word does not fit in length {n}")
            if not multiset and np.unique(arr).size != arr.size:
                raise DomainError("duplicate words in a set code")
            arr.setflags(write=False)
            self._words = arr

    @property
    def is_linear(self) -> bool:
        return self.basis is not None

    @property
    def N(self) -> int:
        if self._words is not None:
            return int(self._words.size)
        return 1 << len(self.basis)

    def __len__(self) -> int:
        return self.N

    @property
    def dimension(self) -> int:
        if not self.is_linear:
            raise DomainError("dimension is defined for linear codes only")
        return len(self.basis)

    @cached_property
    def words(self) -> np.ndarray:
        if self._words is not None:
            return self._words
        if self.N > MAX_WORDS:
            raise ResourceLimitError(f"refusing to list {self.N} words (limit {MAX_WORDS})")
        arr = span(self.basis, self.n)
        arr.setflags(write=False)
        return arr

    def strings(self) -> list[str]:
        return [format(int(w), f"0{self.n}b") for w in self.words]

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        kind = "linear" if self.is_linear else ("multiset" if self.multiset else "set")
        return f"<BinaryCode{label} n={self.n} N={self.N} {kind}>"


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

def _parse_rows(text: str) -> list[tuple[int, str]]:
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        bad = set(line) - {"0", "1"}
        if bad:
            raise ParseError(f"non-binary character(s) {''.join(sorted(bad))!r}", lineno)
        if width is None:
            width = len(line)
        elif len(line) != width:
            raise ParseError(f"word length {len(line)} differs from {width}", lineno)
        rows.append((lineno, line))
    if not rows:
        raise ParseError("no words found")
    return rows


def parse_code(text: str, strict: bool = True, name: str = "") -> BinaryCode:
    """Read one word per line.  ``strict`` rejects repeated words."""
    rows = _parse_rows(text)
    seen = {}
    for lineno, line in rows:
        if strict and line in seen:
            raise ParseError(f"duplicate word {line} (first on line {seen[line]})", lineno)
        seen.setdefault(line, lineno)
    n = len(rows[0][1])
    return BinaryCode(n, [int(s, 2) for _, s in rows], multiset=not strict, name=name)


def parse_generator(text: str, name: str = "") -> BinaryCode:
    """Read generator rows and return the linear code they span."""
    rows = _parse_rows(text)
    n = len(rows[0][1])
    vecs = [int(s, 2) for _, s in rows]
    basis = gf2_echelon(vecs)
    if len(basis) < len(vecs):
        warnings.warn(
            f"generator rows are dependent: rank {len(basis)} < {len(vecs)} rows",
            stacklevel=2,
        )
    if not basis:
        return BinaryCode(n, [0], name=name)
    return BinaryCode(n, basis=basis, name=name)


def _data_text(filename: str) -> str:
    return resources.files("codedisc").joinpath(f"data/{filename}").read_text()


# --------------------------------------------------------------------------
# Named families
# --------------------------------------------------------------------------

def _parity_check_rows(m: int) -> list[int]:
    """Rows of the ``m x (2^m - 1)`` matrix whose columns are 1..2^m-1 in order."""
    n = (1 << m) - 1
    rows = []
    for r in range(m):
        row = 0
        for j in range(1, n + 1):
            bit = (j >> (m - 1 - r)) & 1
            row = (row << 1) | bit
        rows.append(row)
    return rows


def hamming_code(m: int) -> BinaryCode:
    if m < 2:
        raise DomainError(f"Hamming code needs m >= 2, got {m}")
    n = (1 << m) - 1
    return BinaryCode(n, basis=gf2_nullspace(_parity_check_rows(m), n), name=f"hamming:{m}")


def simplex_code(m: int) -> BinaryCode:
    if m < 2:
        raise DomainError(f"simplex code needs m >= 2, got {m}")
    n = (1 << m) - 1
    return BinaryCode(n, basis=gf2_echelon(_parity_check_rows(m)), name=f"simplex:{m}")


def golay23() -> BinaryCode:
    return parse_generator(_data_text("golay23.txt"), name="golay23")


def qr17() -> BinaryCode:
    """Quadratic-residue code of length 17 and dimension 9."""
    return parse_generator(_data_text("qr17.txt"), name="qr17")


def repetition(n: int) -> BinaryCode:
    return BinaryCode(n, basis=[(1 << n) - 1], name=f"repetition:{n}")


def subcube(n: int, m: int) -> BinaryCode:
    """All words vanishing on the last ``m`` coordinates."""
    if not 0 <= m < n:
        raise DomainError(f"subcube needs 0 <= m < n, got n={n}, m={m}")
    return BinaryCode(n, basis=[1 << (m + i) for i in range(n - m)], name=f"subcube:{n}:{m}")


def dual_code(code: BinaryCode) -> BinaryCode:
    if not code.is_linear:
        raise DomainError("dual code is defined for linear codes only")
    basis = gf2_nullspace(code.basis, code.n)
    if not basis:
        return BinaryCode(code.n, [0], name=f"dual({code.name})")
    return BinaryCode(code.n, basis=basis, name=f"dual({code.name})")


# --------------------------------------------------------------------------
# Random codes
# --------------------------------------------------------------------------

def splitmix64(seed: int):
    """Infinite stream of 64-bit splitmix64 outputs."""
    state = seed & _MASK64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        yield z ^ (z >> 31)


def random_words(n: int, N: int, seed: int) -> list[int]:
    """``N`` words whose bits are read most-significant-first from splitmix64.

    The bit stream runs across output and word boundaries: word ``j`` takes
    stream bits ``j*n .. j*n + n - 1``, first bit as its first coordinate.
    """
    gen = splitmix64(seed)
    buf, avail = 0, 0
    words = []
    for _ in range(N):
        while avail < n:
            buf = (buf << 64) | next(gen)
            avail += 64
        avail -= n
        words.append(buf >> avail)
        buf &= (1 << avail) - 1
    return words


def random_code(n: int, N: int, seed: int) -> BinaryCode:
    if N < 1:
        raise DomainError(f"N={N} must be positive")
    return BinaryCode(n, random_words(n, N, seed), multiset=True, name=f"random:{n}:{N}:{seed}")


# --------------------------------------------------------------------------
# Extension
# --------------------------------------------------------------------------

def _with_parity(w: int) -> int:
    return (w << 1) | (w.bit_count() & 1)


def extend_code(code: BinaryCode) -> BinaryCode:
    """Append an overall parity bit to every word."""
    name = f"ext({code.name})" if code.name else ""
    if code.is_linear:
        return BinaryCode(code.n + 1, basis=[_with_parity(b) for b in code.basis], name=name)
    return BinaryCode(
        code.n + 1,
        [_with_parity(int(w)) for w in code.words],
        multiset=code.multiset,
        name=name,
    )


# --------------------------------------------------------------------------
# Distance spectra
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceDistribution:
    """``counts[w]`` is the number of ordered pairs at distance ``w``, i.e. ``N * A_w``."""

    n: int
    N: int
    counts: tuple

    @property
    def A(self) -> tuple:
        return tuple(Fraction(c, self.N) for c in self.counts)

    def __getitem__(self, w) -> Fraction:
        return Fraction(self.counts[w], self.N)

    @classmethod
    def from_A(cls, A: Sequence, N: int) -> "DistanceDistribution":
        counts = []
        for a in A:
            c = Fraction(a) * N
            if c.denominator != 1 or c < 0:
                raise DomainError(f"N*A_w must be a nonnegative integer, got {c}")
            counts.append(int(c))
        if sum(counts) != N * N:
            raise DomainError("distance distribution must sum to N")
        return cls(len(A) - 1, N, tuple(counts))


@dataclass(frozen=True)
class DualDistribution:
    n: int
    N: int
    values: tuple

    def __getitem__(self, w) -> Fraction:
        return self.values[w]


def pairwise_counts(words: np.ndarray, n: int, chunk: int = 512) -> tuple:
    """Histogram of ``d(z_i, z_j)`` over all ordered pairs."""
    words = np.asarray(words) if n > 64 else np.asarray(words, dtype=np.uint64)
    total = np.zeros(n + 1, dtype=np.int64)
    for start in range(0, words.size, chunk):
        block = words[start:start + chunk, None] ^ words[None, :]
        total += np.bincount(popcount(block).ravel(), minlength=n + 1)
    return tuple(int(c) for c in total)


def weight_counts(words: np.ndarray, n: int) -> tuple:
    w = popcount(np.asarray(words) if n > 64 else np.asarray(words, dtype=np.uint64))
    return tuple(int(c) for c in np.bincount(w, minlength=n + 1))


def distance_distribution(code: BinaryCode, method: str = "auto") -> DistanceDistribution:
    """Distance distribution of ``code``.

    ``method="pairs"`` counts all ``N^2`` ordered pairs.  ``"auto"`` does the
    same for nonlinear codes; for a linear code it counts weights in the
    smaller of the code and its dual (distance and weight distributions
    coincide by translation invariance).
    """
    n, N = code.n, code.N
    if method == "pairs" or not code.is_linear:
        return DistanceDistribution(n, N, pairwise_counts(code.words, n))
    if method != "auto":
        raise DomainError(f"unknown method {method!r}")
    if 2 * code.dimension <= n:
        weights = weight_counts(code.words, n)
        return DistanceDistribution(n, N, tuple(N * c for c in weights))
    dual = dual_code(code)
    A = macwilliams_inverse(weight_counts(dual.words, n), N)
    return DistanceDistribution.from_A(A, N)


def dual_distribution(code: BinaryCode, check: bool = False) -> DualDistribution:
    """MacWilliams transform of the distance distribution.

    With ``check=True`` and a linear code, the result is compared with the
    weight distribution of the explicitly built dual code.
    """
    dd = distance_distribution(code)
    values = macwilliams_forward(dd.A, code.N)
    if check and code.is_linear:
        dual = dual_code(code)
        direct = tuple(Fraction(c) for c in weight_counts(dual.words, code.n))
        if direct != values:
            raise IdentityMismatchError("MacWilliams transform disagrees with the dual code")
    return DualDistribution(code.n, code.N, values)


# --------------------------------------------------------------------------
# Identifiers
# --------------------------------------------------------------------------

def from_id(spec: str) -> BinaryCode:
    """Build a code from ``hamming:m``, ``simplex:m``, ``golay23``, ``qr17``,
    ``repetition:n``, ``subcube:n:m`` or ``random:n:N:seed``."""
    parts = spec.strip().split(":")
    kind, args = parts[0].lower(), parts[1:]
    try:
        ints = [int(a) for a in args]
    except ValueError as exc:
        raise DomainError(f"bad code identifier {spec!r}") from exc
    table = {
        "hamming": (hamming_code, 1),
        "simplex": (simplex_code, 1),
        "golay23": (golay23, 0),
        "qr17": (qr17, 0),
        "repetition": (repetition, 1),
        "subcube": (subcube, 2),
        "random": (random_code, 3),
    }
    if kind not in table:
        raise DomainError(f"unknown code family {kind!r}")
    fn, arity = table[kind]
    if len(ints) != arity:
        raise DomainError(f"{kind} takes {arity} parameter(s), got {len(ints)}")
    return fn(*ints)
