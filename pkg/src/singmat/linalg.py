"""Exact linear algebra over QQ and polynomial determinants."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .poly import Polynomial, VariableContext

SparseRow = dict[int, Fraction]


class Echelon:
    """Incrementally maintained row echelon form of sparse rational rows."""

    def __init__(self):
        self.rows: dict[int, SparseRow] = {}  # pivot column -> row with pivot 1

    def reduce(self, row: SparseRow) -> SparseRow:
        row = dict(row)
        while row:
            pivots = [c for c in row if c in self.rows]
            if not pivots:
                return row
            c = pivots[0]
            factor = row[c]
            for col, v in self.rows[c].items():
                nv = row.get(col, 0) - factor * v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
        return row

    def add(self, row: SparseRow) -> bool:
        """Insert ``row``; returns False if it was already in the span."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = 1 / row[c]
        row = {k: v * inv for k, v in row.items()}
        for other in self.rows.values():
            f = other.get(c)
            if f:
                for col, v in row.items():
                    nv = other.get(col, 0) - f * v
                    if nv:
                        other[col] = nv
                    else:
                        other.pop(col, None)
        self.rows[c] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def nullspace(rows: Sequence[SparseRow], ncols: int) -> list[SparseRow]:
    """Basis of {v : row . v = 0 for all rows}, as sparse vectors."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    pivots = set(ech.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = {free: Fraction(1)}
        for c, row in ech.rows.items():
            f = row.get(free)
            if f:
                v[c] = -f
        basis.append(v)
    return basis


def rank(rows: Sequence[SparseRow]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def det(matrix: Sequence[Sequence[Polynomial]], ctx: VariableContext) -> Polynomial:
    """Determinant by expansion over column subsets (fine for n <= 7)."""
    n = len(matrix)
    if n == 0:
        return ctx.one()
    # minors[S] = det of rows 0..|S|-1 restricted to the columns in S
    minors: dict[tuple[int, ...], Polynomial] = {(): ctx.one()}
    for r in range(n):
        nxt: dict[tuple[int, ...], Polynomial] = {}
        for cols in combinations(range(n), r + 1):
            total = ctx.zero()
            for pos, c in enumerate(cols):
                entry = matrix[r][c]
                if entry.is_zero():
                    continue
                rest = cols[:pos] + cols[pos + 1:]
                sub = minors.get(rest)
                if sub is None or sub.is_zero():
                    continue
                sign = -1 if (r + pos) % 2 else 1
                total = total + entry * sub * sign
            nxt[cols] = total
        minors = nxt
    return minors[tuple(range(n))]


def maximal_minors(matrix: Sequence[Sequence[Polynomial]], ctx: VariableContext) -> list[Polynomial]:
    """All k x k minors of a k x n matrix."""
    k = len(matrix)
    if k == 0:
        return [ctx.one()]
    n = len(matrix[0])
    out = []
    for cols in combinations(range(n), k):
        sub = [[row[c] for c in cols] for row in matrix]
        out.append(det(sub, ctx))
    return out


def frac_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i]), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            result = -result
        result *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return result


def frac_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[i], a[piv] = a[piv], a[i]
        inv = 1 / a[i][i]
        a[i] = [x * inv for x in a[i]]
        for r in range(n):
            if r != i and a[r][i]:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [row[n:] for row in a]
