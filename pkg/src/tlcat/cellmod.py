"""Cell modules L_k and the induced modules V^i.

Cap diagrams are ``Matching`` objects with ``N`` bottom points and ``k`` top
points, every top point on a through-strand. A cup diagram is the flip of a cap
diagram. With the stacking convention of :mod:`tl_algebra` the algebra acts on
the right by placing a TL diagram underneath.

Basis elements of V^i are N-strand matchings ``c_{a,b} = compose(a, b)`` whose
cup factor ``a`` is one of the concentric cup diagrams ``a_cup(i, l, n)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .diagrams import (
    Matching,
    cap_cup_factor,
    closure,
    compose,
    enumerate_diagrams,
    enumerate_matchings,
    flip,
    generator,
    identity,
    through_strands,
)
from .laurent import ONE_MINUS_T2, LaurentPoly, RationalFn, T, quantum_two_pow
from .linalg import RowEchelon
from .tl_algebra import TLElement, eval_word


def _check_parity(N: int, k: int) -> None:
    if not 0 <= k <= N or (N - k) % 2:
        raise ValueError(f"k={k} is not a valid through-strand count for N={N}")


def ballot(N: int, l: int) -> int:
    """``C(N, l) - C(N, l-1)``, the number of (N, N-2l) cap diagrams."""
    return comb(N, l) - (comb(N, l - 1) if l > 0 else 0)


@functools.lru_cache(maxsize=None)
def _caps(N: int, k: int) -> tuple[Matching, ...]:
    return tuple(m for m in enumerate_diagrams(N, k) if through_strands(m) == k)


def enumerate_caps(N: int, k: int) -> list[Matching]:
    _check_parity(N, k)
    return list(_caps(N, k))


def enumerate_cups(k: int, N: int) -> list[Matching]:
    return [flip(c) for c in enumerate_caps(N, k)]


# Cell modules


class CellElement:
    """Element of L_k: a combination of (N, k) cap diagrams."""

    __slots__ = ("N", "k", "terms")

    def __init__(self, N: int, k: int, terms: Mapping[Matching, LaurentPoly] | None = None):
        _check_parity(N, k)
        self.N, self.k = N, k
        clean = {}
        for m, c in (terms or {}).items():
            if (m.bottom, m.top) != (N, k):
                raise ValueError(f"{m!r} is not an ({N},{k}) cap diagram")
            c = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
            if not c.is_zero():
                clean[m] = c
        self.terms = clean

    @classmethod
    def basis(cls, m: Matching, coeff: LaurentPoly | int = 1) -> "CellElement":
        return cls(m.bottom, m.top, {m: coeff})

    def __add__(self, other: "CellElement") -> "CellElement":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, LaurentPoly()) + c
        return CellElement(self.N, self.k, terms)

    def __eq__(self, other):
        if not isinstance(other, CellElement):
            return NotImplemented
        return (self.N, self.k, self.terms) == (other.N, other.k, other.terms)

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*{m!r}" for m, c in sorted(self.terms.items()))
        return f"CellElement(N={self.N}, k={self.k}: {body or '0'})"


def cell_action(v: CellElement, u: TLElement) -> CellElement:
    if v.N != u.N:
        raise ValueError("cell element and TL element have different strand counts")
    terms: dict[Matching, LaurentPoly] = {}
    for a, c1 in v.terms.items():
        for m, c2 in u.terms.items():
            res, loops = compose(a, m)
            if through_strands(res) < v.k:
                continue
            terms[res] = terms.get(res, LaurentPoly()) + c1 * c2 * quantum_two_pow(loops)
    return CellElement(v.N, v.k, terms)


def cell_pairing(a: Matching, b: Matching) -> LaurentPoly:
    """Pairing on L_k: ``[2]^c`` when ``b`` over ``flip(a)`` is ``[2]^c`` times the identity."""
    m, loops = compose(b, flip(a))
    if m != identity(m.bottom):
        return LaurentPoly()
    return quantum_two_pow(loops)


def l1_generator(N: int, j: int) -> Matching:
    """The cap diagram ``v_j`` of L^1: one cap on bottom points j, j+1."""
    for m in _caps(N, N - 2):
        if m.partner(j - 1) == j:
            return m
    raise ValueError(f"no cap at position {j} for N={N}")


# Induced modules V^i


def l_max(i: int, n: int) -> int:
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    return min(i, n + 1 - i)


def a_cup(i: int, l: int, n: int) -> Matching:
    """The (k, n+1) cup diagram with ``l`` concentric cups, the innermost on (i, i+1)."""
    if not 0 <= l <= l_max(i, n):
        raise ValueError(f"l={l} out of range 0..{l_max(i, n)}")
    N = n + 1
    k = N - 2 * l
    p = [-1] * (k + N)
    for s in range(l):
        a, b = k + (i - 1 - s), k + (i + s)
        p[a], p[b] = b, a
    free = [t for t in range(k, k + N) if p[t] < 0]
    for s, t in enumerate(free):
        p[s], p[t] = t, s
    return Matching(p, k, N)


def distinguished(i: int, l: int, n: int) -> Matching:
    """``c_{a,flip(a)}`` for ``a = a_cup(i, l, n)``."""
    a = a_cup(i, l, n)
    return compose(a, flip(a))[0]


def x_membership(x: Matching, i: int) -> int | None:
    n = x.N - 1
    cap, cup = cap_cup_factor(x)
    l = (x.N - cup.bottom) // 2
    if l > l_max(i, n):
        return None
    return l if cup == a_cup(i, l, n) else None


@functools.lru_cache(maxsize=None)
def _x_basis(i: int, n: int) -> tuple[Matching, ...]:
    out = []
    for l in range(l_max(i, n) + 1):
        a = a_cup(i, l, n)
        out.extend(compose(a, b)[0] for b in _caps(n + 1, n + 1 - 2 * l))
    return tuple(out)


def x_basis(i: int, n: int) -> list[Matching]:
    """X^i, ordered by l and then by cap diagram."""
    return list(_x_basis(i, n))


def v_action(x: Mapping[Matching, LaurentPoly], u: TLElement, i: int) -> dict[Matching, LaurentPoly]:
    """Multiply in TL, then discard diagrams outside X^i."""
    out: dict[Matching, LaurentPoly] = {}
    for m1, c1 in x.items():
        for m2, c2 in u.terms.items():
            m, loops = compose(m1, m2)
            if x_membership(m, i) is None:
                continue
            v = out.get(m, LaurentPoly()) + c1 * c2 * quantum_two_pow(loops)
            if v.is_zero():
                out.pop(m, None)
            else:
                out[m] = v
    return out


def v_basis_action(x: Matching, j: int, i: int) -> tuple[LaurentPoly, Matching] | None:
    """``x . u_j`` in V^i as a single scaled basis element, or None for zero."""
    m, loops = compose(x, generator(x.N, j))
    if x_membership(m, i) is None:
        return None
    return quantum_two_pow(loops), m


def right_ideal_complement(i: int, n: int) -> list[Matching]:
    """Matchings outside the span of ``u_j TL`` for ``j != i``."""
    N = n + 1
    ideal = set()
    for j in range(1, N):
        if j == i:
            continue
        for y in enumerate_matchings(N):
            ideal.add(compose(generator(N, j), y)[0])
    return [m for m in enumerate_matchings(N) if m not in ideal]


def first_letters(N: int) -> dict[Matching, frozenset[int]]:
    """For each matching, the first letters of all words presenting it (up to scalar)."""
    out: dict[Matching, set[int]] = {m: set() for m in enumerate_matchings(N)}
    for y in enumerate_matchings(N):
        for j in range(1, N):
            out[compose(generator(N, j), y)[0]].add(j)
    return {m: frozenset(s) for m, s in out.items()}


@dataclass
class DimensionReport:
    n: int
    i: int
    dimension: int
    expected: int
    filtration: list[dict]
    complement_ok: bool
    words_ok: bool
    subquotients_ok: bool

    @property
    def ok(self) -> bool:
        return (self.dimension == self.expected and self.complement_ok
                and self.words_ok and self.subquotients_ok)

    def to_json(self) -> dict:
        return {
            "n": self.n, "i": self.i, "dimension": self.dimension, "expected": self.expected,
            "filtration": self.filtration, "complement_ok": self.complement_ok,
            "words_ok": self.words_ok, "subquotients_ok": self.subquotients_ok,
            "pass": self.ok,
        }


def subquotient_matches(i: int, l: int, n: int) -> bool:
    """The l-th filtration layer of V^i acts like L_k under ``b <-> c_{a,b}``."""
    N = n + 1
    k = N - 2 * l
    a = a_cup(i, l, n)
    for b in _caps(N, k):
        x = compose(a, b)[0]
        for j in range(1, N):
            u = TLElement.u(N, j)
            cell = cell_action(CellElement.basis(b), u).terms
            got = {m: c for m, c in v_action({x: LaurentPoly.const(1)}, u, i).items()
                   if through_strands(m) == k}
            want = {compose(a, bb)[0]: c for bb, c in cell.items()}
            if got != want:
                return False
    return True


def v_dimension_check(n: int, i: int) -> DimensionReport:
    N = n + 1
    basis = x_basis(i, n)
    filtration = [
        {"l": l, "k": N - 2 * l, "size": len(_caps(N, N - 2 * l))}
        for l in range(l_max(i, n) + 1)
    ]
    expected = sum(ballot(N, l) for l in range(l_max(i, n) + 1))
    member = {m for m in enumerate_matchings(N) if x_membership(m, i) is not None}
    complement_ok = member == set(basis) == set(right_ideal_complement(i, n))
    letters = first_letters(N)
    words_ok = all((letters[m] <= {i}) == (m in member) for m in letters)
    subq = all(subquotient_matches(i, l, n) for l in range(l_max(i, n) + 1))
    return DimensionReport(n, i, len(basis), expected, filtration, complement_ok, words_ok, subq)


# Pairings on V^i


def _distinguished_level(m: Matching, i: int) -> int | None:
    n = m.N - 1
    for l in range(l_max(i, n) + 1):
        if m == distinguished(i, l, n):
            return l
    return None


def delta_pairing(i: int, l: int, x: Matching, y: Matching) -> LaurentPoly:
    """``r`` if ``y`` over ``flip(x)`` is ``r`` times the l-th distinguished element, else 0."""
    m, loops = compose(y, flip(x))
    if m != distinguished(i, l, x.N - 1):
        return LaurentPoly()
    return quantum_two_pow(loops)


def v_pairing(i: int, x: Matching, y: Matching) -> RationalFn:
    """The pairing on basis elements of V^i with value ``t^l/(1-t^2)`` on ``(1, c_l)``.

    When ``y`` over ``flip(x)`` reduces to a distinguished element this is
    ``[2]^(l+m-N) t^l/(1-t^2)``, with ``m`` counting all circles including those
    removed while stacking; otherwise it is 0.
    """
    m, loops = compose(y, flip(x))
    l = _distinguished_level(m, i)
    if l is None:
        return RationalFn(0)
    circles = loops + closure(m).circles
    return RationalFn(quantum_two_pow(l + circles - m.N) * T**l, ONE_MINUS_T2)


def v_pairing_elements(i: int, x: Mapping[Matching, LaurentPoly],
                       y: Mapping[Matching, LaurentPoly]) -> RationalFn:
    """Semi-linear extension: conjugate-linear in ``x``."""
    total = RationalFn(0)
    for mx, cx in x.items():
        for my, cy in y.items():
            v = v_pairing(i, mx, my)
            if not v.is_zero():
                total = total + v * (cx.bar() * cy)
    return total


def closure_trace_pairing(x: Matching, y: Matching) -> RationalFn:
    """``[2]^(l+m-N) t^l/(1-t^2)`` read off the closure of ``y`` over ``flip(x)``, unfiltered.

    Here ``l = (N - nesting)/2``. Unlike :func:`v_pairing` this may carry a
    negative power of [2].
    """
    m, loops = compose(y, flip(x))
    inv = closure(m)
    N = m.N
    l = (N - inv.nesting) // 2
    e = l + loops + inv.circles - N
    if e >= 0:
        return RationalFn(quantum_two_pow(e) * T**l, ONE_MINUS_T2)
    return RationalFn(T**l, ONE_MINUS_T2 * quantum_two_pow(-e))


def _adjoint(pair, i: int, n: int) -> bool:
    basis = x_basis(i, n)
    N = n + 1
    for x in basis:
        for y in basis:
            for j in range(1, N):
                xu = v_basis_action(x, j, i)
                yu = v_basis_action(y, j, i)
                left = pair(xu[1], y) * xu[0].bar() if xu else None
                right = pair(x, yu[1]) * yu[0] if yu else None
                lz = left is None or left.is_zero()
                rz = right is None or right.is_zero()
                if lz and rz:
                    continue
                if lz != rz or left != right:
                    return False
    return True


def is_adjoint(i: int, n: int) -> bool:
    """``(x u_j, y) = (x, y u_j)`` for :func:`v_pairing` on all basis pairs."""
    return _adjoint(lambda a, b: v_pairing(i, a, b), i, n)


@dataclass
class PairingSpaceReport:
    n: int
    i: int
    rank: int
    deltas_adjoint: bool
    evaluation_identity: bool
    intersection_ok: bool
    solved_rank: int

    @property
    def ok(self) -> bool:
        return (self.deltas_adjoint and self.evaluation_identity and self.intersection_ok
                and self.solved_rank == self.rank)

    def to_json(self) -> dict:
        return {
            "n": self.n, "i": self.i, "rank": self.rank, "solved_rank": self.solved_rank,
            "deltas_adjoint": self.deltas_adjoint,
            "evaluation_identity": self.evaluation_identity,
            "intersection_ok": self.intersection_ok, "pass": self.ok,
        }


def x_intersection(i: int, n: int) -> list[Matching]:
    """Elements of X^i whose flip also lies in X^i."""
    return [m for m in x_basis(i, n) if x_membership(flip(m), i) is not None]


def adjoint_solution_rank(i: int, n: int, t: Fraction = Fraction(3, 7)) -> int:
    """Dimension of the space of adjoint pairings, solved as a linear system at a rational t.

    Every structure constant is a power of [2], which is bar-invariant, so the
    semi-linear adjointness equations specialise to linear ones over Q.
    """
    basis = x_basis(i, n)
    idx = {(a, b): r for r, (a, b) in enumerate((a, b) for a in basis for b in basis)}
    q = t + 1 / t
    ech = RowEchelon()
    for x in basis:
        for y in basis:
            for j in range(1, n + 1):
                xu = v_basis_action(x, j, i)
                yu = v_basis_action(y, j, i)
                row: dict[int, Fraction] = {}
                if xu:
                    row[idx[(xu[1], y)]] = q ** _qtwo_exponent(xu[0])
                if yu:
                    key = idx[(x, yu[1])]
                    row[key] = row.get(key, 0) - q ** _qtwo_exponent(yu[0])
                ech.add({k: v for k, v in row.items() if v})
    return len(idx) - ech.rank


def _qtwo_exponent(p: LaurentPoly) -> int:
    for e in range(0, 64):
        if p == quantum_two_pow(e):
            return e
    raise ValueError(f"{p} is not a power of [2]")


def pairing_space_rank(n: int, i: int) -> PairingSpaceReport:
    lm = l_max(i, n)
    basis = x_basis(i, n)
    deltas_ok = all(
        _adjoint(lambda a, b, l=l: RationalFn(delta_pairing(i, l, a, b)), i, n)
        for l in range(lm + 1)
    )
    one = identity(n + 1)
    matrix = [[delta_pairing(i, l, one, distinguished(i, l2, n)) for l2 in range(lm + 1)]
              for l in range(lm + 1)]
    ident = all(
        matrix[r][c] == (LaurentPoly.const(1) if r == c else LaurentPoly())
        for r in range(lm + 1) for c in range(lm + 1)
    )
    inter = set(x_intersection(i, n)) == {distinguished(i, l, n) for l in range(lm + 1)}
    assert one in basis
    return PairingSpaceReport(n, i, lm + 1, deltas_ok, ident, inter, adjoint_solution_rank(i, n))


# Tier words


def tier(i: int, m: int) -> tuple[int, ...]:
    """The m-th tier ``i+m-1, i+m-3, ..., i-m+1``."""
    return tuple(range(i + m - 1, i - m, -2))


def tier_word(i: int, l: int, n: int) -> tuple[int, ...]:
    if not 0 <= l <= l_max(i, n):
        raise ValueError(f"l={l} out of range 0..{l_max(i, n)}")
    word: tuple[int, ...] = ()
    for m in range(1, l + 1):
        word += tier(i, m)
    return word


def tier_matching(i: int, l: int, n: int) -> Matching:
    """The matching of a tier word; asserts scalar 1 and membership of level ``l``."""
    scalar, m = eval_word(tier_word(i, l, n), n + 1)
    assert scalar == LaurentPoly.const(1), f"tier word evaluates with scalar {scalar}"
    assert x_membership(m, i) == l, f"tier word lands outside level {l} of X^{i}"
    return m


@dataclass
class TierReport:
    i: int
    l: int
    n: int
    word: tuple[int, ...]
    membership: int | None
    final_subsets_stay: bool
    other_removals_exit: bool
    end_value: RationalFn
    end_ok: bool

    @property
    def ok(self) -> bool:
        return (self.membership == self.l and self.final_subsets_stay
                and self.other_removals_exit and self.end_ok)


def tier_check(i: int, l: int, n: int) -> TierReport:
    word = tier_word(i, l, n)
    N = n + 1

    def member(w: Sequence[int]) -> int | None:
        return x_membership(eval_word(w, N)[1], i)

    membership = member(word)
    last = len(word) - l
    final_positions = range(last, len(word))
    stay = True
    for mask in range(1 << l):
        drop = {last + b for b in range(l) if mask >> b & 1}
        if member([c for p, c in enumerate(word) if p not in drop]) is None:
            stay = False
    exit_ = all(
        member(word[:p] + word[p + 1:]) is None
        for p in range(len(word)) if p not in final_positions
    )
    m = eval_word(word, N)[1]
    end = v_pairing(i, m, m)
    end_ok = end == RationalFn((1 + T**2) ** l, ONE_MINUS_T2)
    return TierReport(i, l, n, word, membership, stay, exit_, end, end_ok)
