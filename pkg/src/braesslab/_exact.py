"""Exact integer and rational linear algebra used by the forest computations."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination.

    All intermediate values stay integral; every division is exact.
    The empty matrix has determinant 1.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1] if n else 1


def solve_rational(matrix: Sequence[Sequence], rhs: Sequence[Sequence]) -> list[list[Fraction]]:
    """Solve ``A X = B`` exactly by Gauss-Jordan elimination over the rationals.

    ``rhs`` is a list of right-hand-side rows (shape n x k). Raises
    ``ZeroDivisionError`` when ``A`` is singular.
    """
    n = len(matrix)
    aug = [[Fraction(x) for x in matrix[i]] + [Fraction(x) for x in rhs[i]] for i in range(n)]
    width = len(aug[0]) if n else 0
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        prow = [x / p for x in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                row = aug[r]
                for j in range(col, width):
                    if prow[j]:
                        row[j] -= f * prow[j]
    return [row[n:] for row in aug]


class SparseLDL:
    """Exact ``L D L^T`` factorisation of a symmetric positive definite matrix.

    The matrix is given as a mapping ``{i: {j: a_ij}}`` over an arbitrary
    index set (both triangles stored). Pivots are chosen greedily by
    minimum current degree, which keeps fill-in at zero for trees and
    at O(n) for cycles. No numerical pivoting is needed: grounded
    Laplacians of connected graphs are positive definite.
    """

    def __init__(self, entries: dict[int, dict[int, int]]):
        work = {i: {j: Fraction(x) for j, x in row.items() if x} for i, row in entries.items()}
        self.order: list[int] = []
        self.diag: dict[int, Fraction] = {}
        self.lower: dict[int, dict[int, Fraction]] = {}
        live = set(work)
        while live:
            p = min(live, key=lambda i: (len(work[i]), i))
            row = work.pop(p)
            live.discard(p)
            d = row.pop(p)
            if d <= 0:
                raise ZeroDivisionError("matrix is not positive definite")
            col = {q: x / d for q, x in row.items()}
            for q, lq in col.items():
                wq = work[q]
                del wq[p]
                for r, x in row.items():
                    val = wq.get(r, 0) - lq * x
                    if val:
                        wq[r] = val
                    else:
                        wq.pop(r, None)
            self.order.append(p)
            self.diag[p] = d
            self.lower[p] = col

    def determinant(self) -> Fraction:
        out = Fraction(1)
        for d in self.diag.values():
            out *= d
        return out

    def solve(self, rhs: dict[int, Fraction | int]) -> dict[int, Fraction]:
        """Solve ``A x = rhs``; missing entries of ``rhs`` are zero."""
        y = {i: Fraction(rhs.get(i, 0)) for i in self.order}
        for p in self.order:
            yp = y[p]
            if yp:
                for q, l in self.lower[p].items():
                    y[q] -= l * yp
        for p in self.order:
            y[p] /= self.diag[p]
        for p in reversed(self.order):
            acc = y[p]
            for q, l in self.lower[p].items():
                acc -= l * y[q]
            y[p] = acc
        return y
