"""Hamming and Hadamard code discrepancies against previously printed values."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from fractions import Fraction

from .discrepancy import expected_discrepancy, hamming_closed, simplex_closed
from .rational import round_places

# Published four-row table, m = 4..10, kept as strings to preserve printed precision.
PUBLISHED = {
    "hamming_D": ("1.571", "2.239", "3.179", "4.50471", "6.377", "9.027", "12.763"),
    "hamming_ED": ("17.336", "50.058", "143.016", "406.518", "1152.64", "3264.14", "9238.04"),
    "hadamard_D_scaled": ("0.058", "0.042", "0.030", "0.021", "0.015", "0.011", "0.008"),
    "hadamard_ED_scaled": ("0.068", "0.049", "0.035", "0.025", "0.018", "0.012", "0.009"),
}
M_RANGE = range(4, 11)


def _places(s: str) -> int:
    return len(s.split(".")[1]) if "." in s else 0


def _truncate(q: Fraction, places: int) -> Decimal:
    d = Decimal(q.numerator) / Decimal(q.denominator)
    return d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_DOWN)


@dataclass(frozen=True)
class Cell:
    row: str
    m: int
    exact: Fraction
    printed: str

    @property
    def rounded(self) -> Decimal:
        return round_places(self.exact, _places(self.printed))

    @property
    def truncated(self) -> Decimal:
        return _truncate(self.exact, _places(self.printed))

    @property
    def verdict(self) -> str:
        if self.rounded == Decimal(self.printed):
            return "rounded"
        if self.truncated == Decimal(self.printed):
            return "truncated"
        return "mismatch"

    @property
    def matches(self) -> bool:
        return self.verdict != "mismatch"


def exact_row(row: str, m: int) -> Fraction:
    n = 2**m - 1
    if row == "hamming_D":
        return hamming_closed(m)
    if row == "hamming_ED":
        return expected_discrepancy(n, 2 ** (n - m))
    if row == "hadamard_D_scaled":
        return simplex_closed(m) / 2**n
    if row == "hadamard_ED_scaled":
        return expected_discrepancy(n, 2**m) / 2**n
    raise KeyError(row)


def hamming_table(ms=M_RANGE) -> list[Cell]:
    cells = []
    for row, printed in PUBLISHED.items():
        for m, p in zip(M_RANGE, printed):
            if m in ms:
                cells.append(Cell(row, m, exact_row(row, m), p))
    return cells
