"""Exact two-phase simplex over the rationals with Bland's rule."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError

LE, EQ, GE = "<=", "==", ">="


@dataclass
class LinearProgram:
    """Maximize ``objective . x`` subject to ``rows[r] . x  sense[r]  rhs[r]``.

    Variables are ``>= 0`` except those listed in ``free``.
    """

    objective: Sequence
    rows: Sequence[Sequence]
    senses: Sequence[str]
    rhs: Sequence
    free: tuple = ()
    names: tuple = ()

    def __post_init__(self):
        nv = len(self.objective)
        if not (len(self.rows) == len(self.senses) == len(self.rhs)):
            raise DomainError("rows, senses and rhs must have equal length")
        for r, row in enumerate(self.rows):
            if len(row) != nv:
                raise DomainError(f"row {r} has {len(row)} entries, expected {nv}")
        for s in self.senses:
            if s not in (LE, EQ, GE):
                raise DomainError(f"unknown sense {s!r}")
        if any(not 0 <= j < nv for j in self.free):
            raise DomainError("free variable index out of range")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    def permuted(self, order: Sequence[int]) -> "LinearProgram":
        """Same program with constraint rows reordered."""
        return LinearProgram(
            self.objective,
            [self.rows[i] for i in order],
            [self.senses[i] for i in order],
            [self.rhs[i] for i in order],
            self.free,
            self.names,
        )

    def is_feasible(self, x: Sequence) -> bool:
        x = [Fraction(v) for v in x]
        if len(x) != self.num_vars:
            return False
        if any(v < 0 for j, v in enumerate(x) if j not in self.free):
            return False
        for row, s, b in zip(self.rows, self.senses, self.rhs):
            lhs = sum(Fraction(a) * v for a, v in zip(row, x))
            if (s == LE and lhs > b) or (s == GE and lhs < b) or (s == EQ and lhs != b):
                return False
        return True

    def value(self, x: Sequence) -> Fraction:
        return sum((Fraction(c) * Fraction(v) for c, v in zip(self.objective, x)), Fraction(0))


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    solution: tuple | None = None
    basis_log: list = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def audit(self) -> str:
        lines = [f"status: {self.status}"]
        if self.value is not None:
            lines.append(f"value: {self.value}")
        lines += [f"{phase} pivot {i}: enter {e}, leave {l}" for i, (phase, e, l) in enumerate(self.basis_log)]
        return "\n".join(lines)


class _Tableau:
    def __init__(self, A, b, basis):
        self.A = A  # list of rows of Fractions
        self.b = b
        self.basis = basis

    def pivot(self, r: int, j: int):
        A, b = self.A, self.b
        p = A[r][j]
        row = [v / p for v in A[r]]
        A[r] = row
        b[r] = b[r] / p
        for i in range(len(A)):
            if i != r and A[i][j] != 0:
                f = A[i][j]
                Ai = A[i]
                A[i] = [u - f * v for u, v in zip(Ai, row)]
                b[i] -= f * b[r]
        self.basis[r] = j

    def run(self, cost, allowed, log, phase, max_iter):
        """Maximize ``cost`` over columns in ``allowed``.  Returns False if unbounded."""
        for _ in range(max_iter):
            cb = [cost[j] for j in self.basis]
            enter = None
            for j in allowed:
                if j in self.basis:
                    continue
                red = cost[j] - sum(c * row[j] for c, row in zip(cb, self.A) if c)
                if red > 0:
                    enter = j
                    break
            if enter is None:
                return True
            leave, best = None, None
            for r, row in enumerate(self.A):
                if row[enter] > 0:
                    ratio = self.b[r] / row[enter]
                    if best is None or ratio < best or (ratio == best and self.basis[r] < self.basis[leave]):
                        leave, best = r, ratio
            if leave is None:
                return False
            log.append((phase, enter, self.basis[leave]))
            self.pivot(leave, enter)
        raise RuntimeError("simplex iteration limit reached")


def simplex_solve(lp: LinearProgram, max_iter: int = 100000) -> LPResult:
    nv = lp.num_vars
    # column layout: x_j (or x_j^+), x_j^- for free j, slacks, artificials
    cols = []  # (original var, sign)
    for j in range(nv):
        cols.append((j, 1))
    for j in lp.free:
        cols.append((j, -1))
    nstruct = len(cols)
    m = len(lp.rows)
    nslack = sum(1 for s in lp.senses if s != EQ)
    width = nstruct + nslack + m

    A, b = [], []
    k = nstruct
    for r, (row, s, rhs) in enumerate(zip(lp.rows, lp.senses, lp.rhs)):
        line = [Fraction(0)] * width
        for c, (j, sign) in enumerate(cols):
            line[c] = sign * Fraction(row[j])
        if s != EQ:
            line[k] = Fraction(1) if s == LE else Fraction(-1)
            k += 1
        rhs = Fraction(rhs)
        if rhs < 0:
            line = [-v for v in line]
            rhs = -rhs
        line[nstruct + nslack + r] = Fraction(1)
        A.append(line)
        b.append(rhs)

    art = set(range(nstruct + nslack, width))
    tab = _Tableau(A, b, [nstruct + nslack + r for r in range(m)])
    log = []
    phase1 = [Fraction(-1) if j in art else Fraction(0) for j in range(width)]
    tab.run(phase1, range(width), log, "phase1", max_iter)
    if any(tab.b[r] != 0 for r, j in enumerate(tab.basis) if j in art):
        return LPResult("infeasible", basis_log=log)

    # drive zero-level artificials out of the basis; drop redundant rows
    r = 0
    while r < len(tab.A):
        if tab.basis[r] in art:
            j = next((j for j in range(nstruct + nslack) if tab.A[r][j] != 0), None)
            if j is None:
                del tab.A[r], tab.b[r], tab.basis[r]
                continue
            log.append(("cleanup", j, tab.basis[r]))
            tab.pivot(r, j)
        r += 1

    cost = [Fraction(0)] * width
    for c, (j, sign) in enumerate(cols):
        cost[c] = sign * Fraction(lp.objective[j])
    if not tab.run(cost, range(nstruct + nslack), log, "phase2", max_iter):
        return LPResult("unbounded", basis_log=log)

    colval = [Fraction(0)] * width
    for r, j in enumerate(tab.basis):
        colval[j] = tab.b[r]
    x = [Fraction(0)] * nv
    for c, (j, sign) in enumerate(cols):
        x[j] += sign * colval[c]
    return LPResult("optimal", lp.value(x), tuple(x), log)
