"""Exact linear algebra over Q with sparse dict rows."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Row = dict[Hashable, Fraction]


class RowEchelon:
    """Incrementally maintained echelon basis of a span of sparse vectors.

    Each stored row has a pivot (its largest key) with coefficient 1, and no two
    rows share a pivot.
    """

    def __init__(self) -> None:
        self.rows: dict[Hashable, Row] = {}

    def reduce(self, vec: Mapping[Hashable, Fraction | int]) -> Row:
        v: Row = {k: Fraction(c) for k, c in vec.items() if c}
        while v:
            piv = max(v)
            row = self.rows.get(piv)
            if row is None:
                return v
            c = v[piv]
            for k, a in row.items():
                nv = v.get(k, 0) - c * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Mapping[Hashable, Fraction | int]) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = max(v)
        c = v[piv]
        self.rows[piv] = {k: a / c for k, a in v.items()}
        return True

    def contains(self, vec: Mapping[Hashable, Fraction | int]) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[Mapping[Hashable, Fraction | int]]) -> int:
    ech = RowEchelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def nullspace(matrix: Sequence[Sequence[Fraction | int]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of a dense matrix, via reduced row echelon form."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis
