"""Exact Gaussian elimination over the rationals.

Pivots are chosen by full pivoting on the smallest combined bit-length of
numerator and denominator, which keeps intermediate entries small and makes
the elimination order a deterministic function of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .series import Rational, rational

__all__ = ["Matrix", "EliminationResult", "eliminate", "solve_linear", "inverse", "determinant", "rank"]

Matrix = list[list[Rational]]


def _size(x: Rational) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _copy(rows: Sequence[Sequence[object]]) -> Matrix:
    return [[rational(x) for x in row] for row in rows]


@dataclass
class EliminationResult:
    """Reduced row echelon data of an augmented system ``A x = b``."""

    n_cols: int
    pivots: dict[int, int]               # column -> row of the reduced matrix
    reduced: Matrix                      # rows of [A | b] in reduced form
    rank: int
    consistent: bool
    free_columns: list[int] = field(default_factory=list)

    def solution(self) -> list[Rational | None]:
        """Pivot columns get their value, free columns ``None``.

        Free columns are treated as zero when reading off pivot values, which
        is only meaningful when no pivot row involves a free column.
        """
        out: list[Rational | None] = [None] * self.n_cols
        for col, row in self.pivots.items():
            out[col] = self.reduced[row][-1]
        return out

    def determined(self) -> list[int]:
        """Pivot columns whose row has no free-column entries."""
        free = set(self.free_columns)
        good = []
        for col, row in self.pivots.items():
            r = self.reduced[row]
            if all(not r[c] for c in free):
                good.append(col)
        return sorted(good)


def eliminate(a: Sequence[Sequence[object]], b: Sequence[object] | None = None) -> EliminationResult:
    """Gauss-Jordan elimination of ``[a | b]`` with full pivoting."""
    rows = _copy(a)
    n_cols = len(rows[0]) if rows else 0
    rhs = [rational(x) for x in b] if b is not None else [mpq(0)] * len(rows)
    if len(rhs) != len(rows):
        raise ValueError("right-hand side length does not match the matrix")
    aug = [r + [v] for r, v in zip(rows, rhs)]
    if any(len(r) != n_cols + 1 for r in aug):
        raise ValueError("ragged matrix")

    used_rows: set[int] = set()
    pivots: dict[int, int] = {}
    while True:
        best = None
        for i, r in enumerate(aug):
            if i in used_rows:
                continue
            for j in range(n_cols):
                if j in pivots:
                    continue
                x = r[j]
                if x:
                    s = _size(x)
                    if best is None or s < best[0]:
                        best = (s, i, j)
        if best is None:
            break
        _, pi, pj = best
        prow = aug[pi]
        inv = 1 / prow[pj]
        prow[:] = [x * inv for x in prow]
        for i, r in enumerate(aug):
            if i != pi and r[pj]:
                f = r[pj]
                r[:] = [x - f * y for x, y in zip(r, prow)]
        used_rows.add(pi)
        pivots[pj] = pi

    consistent = all(aug[i][-1] == 0 for i in range(len(aug)) if i not in used_rows)
    free = [j for j in range(n_cols) if j not in pivots]
    return EliminationResult(n_cols, pivots, aug, len(pivots), consistent, free)


def solve_linear(a: Sequence[Sequence[object]], b: Sequence[object]) -> list[Rational]:
    """Unique solution of a square or overdetermined consistent system."""
    res = eliminate(a, b)
    if not res.consistent:
        raise ValueError("inconsistent linear system")
    if res.free_columns:
        raise ValueError(f"underdetermined system, free columns {res.free_columns}")
    return [x for x in res.solution()]  # type: ignore[misc]


def rank(a: Sequence[Sequence[object]]) -> int:
    return eliminate(a).rank if a else 0


def determinant(a: Sequence[Sequence[object]]) -> Rational:
    m = _copy(a)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    det = mpq(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c] and (piv is None or _size(m[r][c]) < _size(m[piv][c])):
                piv = r
        if piv is None:
            return mpq(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def inverse(a: Sequence[Sequence[object]]) -> Matrix:
    m = _copy(a)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse needs a square matrix")
    aug = [r + [mpq(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = None
        for r in range(c, n):
            if aug[r][c] and (piv is None or _size(aug[r][c]) < _size(aug[piv][c])):
                piv = r
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]
