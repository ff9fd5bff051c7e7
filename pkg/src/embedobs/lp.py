"""Exact two-phase simplex method over ``Fraction`` with Bland's rule.

Problems are in equality form ``A x = b, x >= 0``.  Bland's rule (least
entering index, least leaving index on ratio ties) guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Number = Fraction | int


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            self.rows[r] = prow = [v / piv for v in prow]
            self.rhs[r] /= piv
        for i, row in enumerate(self.rows):
            if i != r and row[col] != 0:
                factor = row[col]
                self.rows[i] = [a - factor * p for a, p in zip(row, prow)]
                self.rhs[i] -= factor * self.rhs[r]
        self.basis[r] = col

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        ncols = len(cost)
        red = list(cost)
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                for j in range(ncols):
                    if row[j]:
                        red[j] -= cb * row[j]
        return red

    def optimize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> bool:
        """Minimize ``cost . x``; False if unbounded."""
        while True:
            red = self.reduced_costs(cost)
            entering = next(
                (j for j in range(len(cost)) if allowed[j] and red[j] < 0), None
            )
            if entering is None:
                return True
            best: tuple[Fraction, int, int] | None = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[r] / a, self.basis[r], r)
                    if best is None or key < best:
                        best = key
            if best is None:
                return False
            self.pivot(best[2], entering)

    def solution(self, n: int) -> list[Fraction]:
        x = [Fraction(0)] * n
        for r, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[r]
        return x


def _phase_one(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> _Tableau | None:
    m = len(A)
    n = len(A[0]) if m else 0
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art)
        rhs.append(bi)
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    tab.optimize(cost, [True] * (n + m))
    if sum(tab.rhs[r] for r, bv in enumerate(tab.basis) if bv >= n) != 0:
        return None
    # drive zero-level artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    tab.rows = [row[:n] for row in tab.rows]
    return tab


def feasible_point(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction] | None:
    """Some basic feasible solution of ``A x = b, x >= 0``, or None."""
    n = len(A[0]) if A else 0
    tab = _phase_one(A, b)
    if tab is None:
        return None
    return tab.solution(n)


def minimize(
    A: Sequence[Sequence[Number]], b: Sequence[Number], c: Sequence[Number]
) -> tuple[Fraction, list[Fraction]] | None:
    """Optimal value and vertex for ``min c.x``; None if infeasible.

    Raises ValueError when the objective is unbounded below.
    """
    n = len(c)
    tab = _phase_one(A, b)
    if tab is None:
        return None
    cost = [Fraction(v) for v in c]
    if not tab.optimize(cost, [True] * n):
        raise ValueError("objective unbounded below")
    x = tab.solution(n)
    return sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0)), x


def lexmin_point(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction] | None:
    """Lexicographically least point of the (bounded) feasible polytope.

    Minimizes ``x_0``, fixes it, minimizes ``x_1``, and so on.
    """
    n = len(A[0]) if A else 0
    rows = [list(r) for r in A]
    rhs = list(b)
    if feasible_point(rows, rhs) is None:
        return None
    x: list[Fraction] = []
    for i in range(n):
        c = [0] * n
        c[i] = 1
        res = minimize(rows, rhs, c)
        assert res is not None
        val = res[0]
        x.append(val)
        fix = [0] * n
        fix[i] = 1
        rows.append(fix)
        rhs.append(val)
    return x
