"""The graded ring R = Q[f_1, ..., f_n] with deg f_i = 2.

Here ``f_i = x_i - x_{i+1}`` are the simple roots of S_{n+1}. Everything is
stored in f-coordinates: a :class:`Poly` maps exponent vectors to rational
coefficients.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

Exp = tuple[int, ...]


class Poly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exp, Fraction | int] | None = None):
        self.n = n
        clean: dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not have length {n}")
            if c:
                clean[tuple(e)] = Fraction(c)
        self.terms = clean

    @classmethod
    def const(cls, n: int, c: Fraction | int) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, exp: Sequence[int], c: Fraction | int = 1) -> "Poly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        """``f_i`` (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Graded degree (twice the exponent sum) of a homogeneous polynomial."""
        degs = {2 * sum(e) for e in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else 0

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.n, {e: c for e, c in self.terms.items() if 2 * sum(e) == degree})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "Poly":
        if m < 0:
            raise ValueError("negative power")
        out = Poly.const(self.n, 1)
        for _ in range(m):
            out = out * self
        return out

    def divide_monomial(self, exp: Sequence[int]) -> "Poly":
        """Exact division by a monomial; raises ArithmeticError if it does not divide."""
        terms = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, exp))
            if min(q, default=0) < 0:
                raise ArithmeticError(f"monomial {tuple(exp)} does not divide {self}")
            terms[q] = c
        return Poly(self.n, terms)

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term *= Fraction(v) ** k
            total += term
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring homomorphism sending ``f_i`` to ``images[i-1]``."""
        out = Poly(self.n)
        powers: dict[tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            term = Poly.const(self.n, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"f{i + 1}" if k == 1 else f"f{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(e), "coeff": f"{c.numerator}/{c.denominator}"}
            for e, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, n: int, data: list[dict]) -> "Poly":
        return cls(n, {tuple(d["exponents"]): Fraction(d["coeff"]) for d in data})


def f(n: int, i: int) -> Poly:
    return Poly.var(n, i)


def monomials(n: int, degree: int) -> list[Exp]:
    """Exponent vectors of all monomials of graded degree ``degree`` (sorted)."""
    if degree % 2 or degree < 0:
        return []
    return sorted(_compositions(degree // 2, n))


def _compositions(total: int, parts: int) -> Iterator[Exp]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        e = []
        for c in cut:
            e.append(c - prev - 1)
            prev = c
        e.append(total + parts - 2 - prev)
        yield tuple(e)


def dim_piece(n: int, degree: int) -> int:
    return len(monomials(n, degree))


def simple_reflection_images(i: int, n: int) -> list[Poly]:
    """Images of ``f_1..f_n`` under ``s_i``."""
    if not 1 <= i <= n:
        raise ValueError(f"reflection index {i} out of range 1..{n}")
    imgs = []
    for j in range(1, n + 1):
        if j == i:
            imgs.append(-f(n, j))
        elif abs(j - i) == 1:
            imgs.append(f(n, i) + f(n, j))
        else:
            imgs.append(f(n, j))
    return imgs


def act_simple(i: int, p: Poly) -> Poly:
    """Apply the simple reflection ``s_i``."""
    return p.substitute(simple_reflection_images(i, p.n))


def demazure(i: int, p: Poly) -> Poly:
    """``(p - s_i p) / f_i``."""
    diff = p - act_simple(i, p)
    e = [0] * p.n
    e[i - 1] = 1
    try:
        return diff.divide_monomial(e)
    except ArithmeticError as exc:  # pragma: no cover - cannot happen mathematically
        raise AssertionError(f"f_{i} does not divide p - s_{i}p") from exc


def y_gen(i: int, j: int, n: int) -> Poly:
    """``f_i f_j (f_i + 2 f_{i+1} + ... + 2 f_{j-1} + f_j)``; symmetric in i, j."""
    if i == j:
        raise ValueError("y_gen needs distinct indices")
    i, j = min(i, j), max(i, j)
    if not (1 <= i and j <= n):
        raise ValueError(f"indices {i}, {j} out of range 1..{n}")
    inner = f(n, i) + f(n, j)
    for k in range(i + 1, j):
        inner = inner + 2 * f(n, k)
    return f(n, i) * f(n, j) * inner


def z_gen(i: int, j: int, word: Sequence[int], n: int) -> Poly:
    """``y_{i,j}`` divided by ``f_i`` if ``i`` is in the word and by ``f_j`` if ``j`` is."""
    if len(set(word)) != len(word):
        raise ValueError("z_gen needs a non-repeating word")
    members = set(word)
    e = [0] * n
    for k in (i, j):
        if k in members:
            e[k - 1] = 1
    try:
        return y_gen(i, j, n).divide_monomial(e)
    except ArithmeticError as exc:  # pragma: no cover
        raise AssertionError("g_i g_j does not divide y_{i,j}") from exc


def x_to_f(x: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    """Convert x-coordinates (length n+1) to f-coordinates ``f_i = x_i - x_{i+1}``."""
    return tuple(Fraction(x[i]) - Fraction(x[i + 1]) for i in range(len(x) - 1))
