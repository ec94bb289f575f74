"""Weyl lines of the type A arrangement and the vanishing ideals of their unions.

A Weyl line is the intersection of reflection hyperplanes ``x_a = x_b`` that
leaves a one-dimensional space inside ``sum x = 0``. Such a line is fixed by a
split of ``{1..n+1}`` into two blocks on which the x-coordinates are constant.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RowEchelon, nullspace
from .polyring import Poly, monomials, x_to_f
from .tl_ideal import ideal_piece_dim


@dataclass(frozen=True, order=True)
class WeylLine:
    n: int
    block: tuple[int, ...]  # sorted, always contains 1, never everything

    def __post_init__(self):
        if not self.block or 1 not in self.block or len(self.block) > self.n:
            raise ValueError(f"block {self.block} is not a canonical proper block")

    @property
    def x_coords(self) -> tuple[int, ...]:
        p = len(self.block)
        q = self.n + 1 - p
        inside = set(self.block)
        return tuple(q if a in inside else -p for a in range(1, self.n + 2))

    @property
    def direction(self) -> tuple[Fraction, ...]:
        """f-coordinates of the spanning vector, scaled to a primitive integer vector."""
        v = x_to_f(self.x_coords)
        g = math.gcd(*(int(x) for x in v))
        return tuple(x / g for x in v)

    def on_hyperplane(self, i: int, j: int) -> bool:
        """Whether ``w_{i,j} = f_i + ... + f_j`` vanishes on the line."""
        return (i in self.block) == (j + 1 in self.block)

    def to_json(self) -> dict:
        return {"block": list(self.block), "direction": [str(v) for v in self.direction]}


def enumerate_lines(n: int) -> list[WeylLine]:
    """One line per split of ``{1..n+1}`` into two nonempty blocks."""
    rest = range(2, n + 2)
    lines = []
    for r in range(0, n):
        for extra in itertools.combinations(rest, r):
            lines.append(WeylLine(n, (1,) + extra))
    return sorted(lines)


def hyperplane_forms(n: int) -> list[tuple[int, int, tuple[int, ...]]]:
    """``(i, j, coefficients)`` for ``w_{i,j} = f_i + ... + f_j`` in f-coordinates."""
    out = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out.append((i, j, tuple(1 if i <= k <= j else 0 for k in range(1, n + 1))))
    return out


def _projective_key(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lead = next(x for x in v if x != 0)
    return tuple(x / lead for x in v)


def lines_by_kernels(n: int) -> set[tuple[Fraction, ...]]:
    """Normalised directions of all one-dimensional intersections of hyperplanes.

    Brute force over subsets of the forms, so only usable for small ``n``.
    """
    forms = [f for _, _, f in hyperplane_forms(n)]
    found: set[tuple[Fraction, ...]] = set()
    for size in range(n - 1, len(forms) + 1):
        for subset in itertools.combinations(forms, size):
            ker = nullspace(subset, n) if subset else [
                [Fraction(int(a == b)) for a in range(n)] for b in range(n)
            ]
            if len(ker) == 1:
                found.add(_projective_key(ker[0]))
    return found


def is_transverse(line: WeylLine, word: Sequence[int]) -> bool:
    d = line.direction
    return all(d[k - 1] != 0 for k in word)


def transverse_lines(n: int, word: Sequence[int]) -> list[WeylLine]:
    return [ln for ln in enumerate_lines(n) if is_transverse(ln, word)]


def eval_on_line(p: Poly, line: WeylLine) -> Fraction:
    if not p.is_homogeneous():
        raise ValueError("only homogeneous polynomials can be tested on a line")
    return p.evaluate(line.direction)


def vanishing_piece_dim(n: int, word: Sequence[int], degree: int) -> int:
    """Dimension of the degree piece of the ideal of the transverse lines' union."""
    mons = monomials(n, degree)
    lines = transverse_lines(n, word)
    ech = RowEchelon()
    for ln in lines:
        d = ln.direction
        row = {}
        for idx, e in enumerate(mons):
            v = Fraction(1)
            for x, k in zip(d, e):
                if k:
                    v *= x**k
            if v:
                row[idx] = v
        ech.add(row)
    return len(mons) - ech.rank


@dataclass
class CorrespondenceReport:
    n: int
    word: tuple[int, ...]
    transverse_count: int
    degree_table: list[dict]
    ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "word": list(self.word),
            "transverse_count": self.transverse_count,
            "degree_table": self.degree_table,
            "pass": self.ok,
        }


def verify_correspondence(n: int, word: Sequence[int], max_degree: int = 12) -> CorrespondenceReport:
    word = tuple(word)
    table = []
    ok = True
    for deg in range(0, max_degree + 1, 2):
        a = ideal_piece_dim(n, word, deg)
        b = vanishing_piece_dim(n, word, deg)
        table.append({"degree": deg, "ideal": a, "vanishing": b, "match": a == b})
        ok &= a == b
    return CorrespondenceReport(n, word, len(transverse_lines(n, word)), table, ok)


def expected_transverse_count(n: int, d: int) -> int:
    """``2^(n-d)``, less one for the empty word (the whole space is not a line)."""
    return 2 ** (n - d) - (1 if d == 0 else 0)
