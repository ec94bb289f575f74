"""Rewriting systems presenting the quotients R/I for non-repeating words.

For the empty word the ideal is generated by the ``y_{i,j}``; otherwise by the
``z_{k,j}`` for a pivot ``k`` in the word. Each generator becomes one rule that
rewrites its leading monomial. Monomials are compared lexicographically,
looking first at the exponent of the highest-ranked index.

Only the set of letters of a word matters to the ideal, so every function here
accepts any non-repeating word.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .laurent import ONE_MINUS_T2, ONE_PLUS_T2, T, LaurentPoly, RationalFn, series_prefix
from .linalg import RowEchelon
from .polyring import Exp, Poly, dim_piece, monomials, y_gen, z_gen

DEFAULT_MAX_DEGREE = 16


class VerificationError(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class Rule:
    lead: Exp
    replacement: Poly

    def __str__(self):
        return f"{Poly.monomial(self.lead)} -> {self.replacement}"


@dataclass
class RewriteSystem:
    n: int
    word: tuple[int, ...]
    pivot: int | None
    index_order: tuple[int, ...]
    rules: list[Rule] = field(default_factory=list)

    def key(self, e: Exp) -> tuple[int, ...]:
        """Sort key: exponents listed from the highest-ranked index down."""
        return tuple(e[idx - 1] for idx in reversed(self.index_order))

    def generators(self) -> list[Poly]:
        return ideal_generators(self.n, self.word, self.pivot)


def pivot_order(k: int, n: int) -> tuple[int, ...]:
    """``k < k+1 < k-1 < k+2 < k-2 < ...`` restricted to ``1..n``."""
    order = [k]
    step = 1
    while len(order) < n:
        for cand in (k + step, k - step):
            if 1 <= cand <= n:
                order.append(cand)
        step += 1
    return tuple(order)


def _check_word(n: int, word: Sequence[int]) -> tuple[int, ...]:
    word = tuple(word)
    if len(set(word)) != len(word):
        raise ValueError(f"word {word} repeats an index")
    if any(not 1 <= i <= n for i in word):
        raise ValueError(f"word {word} has an index outside 1..{n}")
    return word


def _between(k: int, j: int) -> range:
    return range(min(k, j) + 1, max(k, j))


def build_system(n: int, word: Sequence[int] = (), pivot: int | None = None) -> RewriteSystem:
    word = _check_word(n, word)
    if word:
        if pivot is None:
            pivot = word[0]
        if pivot not in word:
            raise ValueError(f"pivot {pivot} is not a letter of {word}")
    elif pivot is not None:
        raise ValueError("the empty word takes no pivot")

    rules: list[Rule] = []
    if not word:
        order = tuple(range(1, n + 1))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                e = [0] * n
                e[i - 1], e[j - 1] = 1, 2
                lead = tuple(e)
                e2 = [0] * n
                e2[i - 1], e2[j - 1] = 2, 1
                rep = Poly.monomial(e2)
                for k in _between(i, j):
                    e3 = [0] * n
                    e3[i - 1] = e3[k - 1] = e3[j - 1] = 1
                    rep = rep + Poly.monomial(e3, 2)
                rules.append(Rule(lead, -rep))
    else:
        k = pivot
        order = pivot_order(k, n)
        members = set(word)
        for j in range(1, n + 1):
            if j == k:
                continue
            e = [0] * n
            inner = Poly.var(n, k)
            for l in _between(k, j):
                inner = inner + 2 * Poly.var(n, l)
            if j in members:
                e[j - 1] = 1
                rules.append(Rule(tuple(e), -inner))
            else:
                e[j - 1] = 2
                rules.append(Rule(tuple(e), -(inner * Poly.var(n, j))))
    sys = RewriteSystem(n, word, pivot, order, rules)
    _assert_consistent(sys)
    return sys


def _assert_consistent(sys: RewriteSystem) -> None:
    gens = sys.generators()
    for rule, gen in zip(sys.rules, gens):
        lead_key = sys.key(rule.lead)
        for e in rule.replacement.terms:
            if not sys.key(e) < lead_key:
                raise AssertionError(f"rule {rule} does not lower the order")
        if Poly.monomial(rule.lead) - rule.replacement != gen:
            raise AssertionError(f"rule {rule} does not recombine to its generator {gen}")


def ideal_generators(n: int, word: Sequence[int] = (), pivot: int | None = None) -> list[Poly]:
    """Generators in rule order: ``y_{i,j}`` for ``i < j``, or ``z_{k,j}`` for ``j != k``."""
    word = _check_word(n, word)
    if not word:
        return [y_gen(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    k = word[0] if pivot is None else pivot
    return [z_gen(k, j, word, n) for j in range(1, n + 1) if j != k]


def full_generators(n: int, word: Sequence[int] = ()) -> list[Poly]:
    """All ``z_{i,j}`` with ``i < j`` (the ``y_{i,j}`` for the empty word)."""
    word = _check_word(n, word)
    return [z_gen(i, j, word, n) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reducer(sys: RewriteSystem, e: Exp) -> Rule | None:
    for rule in sys.rules:
        if _divides(rule.lead, e):
            return rule
    return None


def is_irreducible(sys: RewriteSystem, e: Exp) -> bool:
    return _reducer(sys, tuple(e)) is None


def normal_form(sys: RewriteSystem, p: Poly) -> Poly:
    """Rewrite until no term is divisible by a rule's leading monomial.

    The largest reducible term is rewritten first.
    """
    terms: dict[Exp, Fraction] = dict(p.terms)
    done: dict[Exp, Fraction] = {}
    while terms:
        e = max(terms, key=sys.key)
        c = terms.pop(e)
        rule = _reducer(sys, e)
        if rule is None:
            done[e] = done.get(e, 0) + c
            continue
        cofactor = tuple(a - b for a, b in zip(e, rule.lead))
        for r, rc in rule.replacement.terms.items():
            m = tuple(a + b for a, b in zip(r, cofactor))
            v = terms.get(m, 0) + c * rc
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
    return Poly(sys.n, done)


def irreducible_monomials(sys: RewriteSystem, degree: int) -> list[Exp]:
    return [e for e in monomials(sys.n, degree) if is_irreducible(sys, e)]


# Confluence


@dataclass
class ConfluenceReport:
    ok: bool
    checked: int
    failures: list[dict] = field(default_factory=list)


def _one_step(sys: RewriteSystem, e: Exp, rule: Rule) -> Poly:
    cofactor = tuple(a - b for a, b in zip(e, rule.lead))
    return rule.replacement * Poly.monomial(cofactor)


def confluence_check(sys: RewriteSystem, max_degree: int = 12) -> ConfluenceReport:
    """Resolve every ambiguity two ways and compare normal forms.

    Overlap ambiguities come from pairs of rules whose leading monomials share a
    variable, taken at their lcm. In addition every monomial up to ``max_degree``
    is reduced by each applicable rule in turn.
    """
    n = sys.n
    witnesses: set[Exp] = set()
    for a in range(len(sys.rules)):
        for b in range(a + 1, len(sys.rules)):
            la, lb = sys.rules[a].lead, sys.rules[b].lead
            if any(x and y for x, y in zip(la, lb)):
                lcm = tuple(max(x, y) for x, y in zip(la, lb))
                if 2 * sum(lcm) <= max_degree:
                    witnesses.add(lcm)
    for d in range(0, max_degree + 1, 2):
        witnesses.update(monomials(n, d))
    report = ConfluenceReport(ok=True, checked=0)
    for e in sorted(witnesses):
        applicable = [r for r in sys.rules if _divides(r.lead, e)]
        if len(applicable) < 2:
            continue
        report.checked += 1
        results = [normal_form(sys, _one_step(sys, e, r)) for r in applicable]
        if any(r != results[0] for r in results[1:]):
            report.ok = False
            report.failures.append({
                "monomial": list(e),
                "rules": [str(r) for r in applicable],
                "normal_forms": [str(r) for r in results],
            })
    return report


# Hilbert series


@dataclass
class HilbertData:
    closed_form: RationalFn
    prefix: list[int]
    oracle_prefix: list[int] | None = None

    def to_json(self) -> dict:
        return {
            "closed_form": str(self.closed_form.simplified()),
            "prefix": list(self.prefix),
            "oracle_prefix": None if self.oracle_prefix is None else list(self.oracle_prefix),
            "match": self.oracle_prefix is None or self.prefix == self.oracle_prefix,
        }


def hilbert_closed_form(n: int, d: int) -> RationalFn:
    """``((1+t^2)^(n-d) - [d=0] t^2) / (1-t^2)``."""
    num = ONE_PLUS_T2 ** (n - d)
    if d == 0:
        num = num - T**2
    return RationalFn(num, ONE_MINUS_T2)


def series_even_prefix(r: RationalFn, max_degree: int) -> list[int]:
    """Coefficients of ``t^0, t^2, ..., t^D`` in the expansion of ``r``."""
    coeffs = series_prefix(r, max_degree)
    out = []
    for deg in range(0, max_degree + 1, 2):
        c = coeffs[deg + max_degree]
        if Fraction(c).denominator != 1:
            raise VerificationError(f"non-integral coefficient {c} at t^{deg}")
        out.append(int(c))
    return out


def hilbert(sys: RewriteSystem, max_degree: int = DEFAULT_MAX_DEGREE) -> HilbertData:
    closed = hilbert_closed_form(sys.n, len(sys.word))
    expected = series_even_prefix(closed, max_degree)
    counted = [len(irreducible_monomials(sys, deg)) for deg in range(0, max_degree + 1, 2)]
    if counted != expected:
        raise VerificationError(
            f"irreducible monomial counts {counted} differ from closed form {expected}"
        )
    return HilbertData(closed, counted)


# Linear-algebra oracle


def _piece_echelon(gens: Sequence[Poly], n: int, degree: int) -> RowEchelon:
    ech = RowEchelon()
    for g in gens:
        gd = g.degree()
        if gd > degree:
            continue
        for cof in monomials(n, degree - gd):
            ech.add((g * Poly.monomial(cof)).terms)
    return ech


@functools.lru_cache(maxsize=None)
def _ideal_piece_dim(n: int, letters: frozenset[int], degree: int) -> int:
    if degree % 2:
        return 0
    return _piece_echelon(full_generators(n, tuple(sorted(letters))), n, degree).rank


def ideal_piece_dim(n: int, word: Sequence[int], degree: int) -> int:
    """Dimension of the degree-``degree`` piece of the ideal spanned by all ``z_{i,j}``."""
    word = _check_word(n, word)
    return _ideal_piece_dim(n, frozenset(word), degree)


def generated_piece_dim(gens: Sequence[Poly], n: int, degree: int) -> int:
    return _piece_echelon(gens, n, degree).rank


def oracle_prefix(n: int, word: Sequence[int], max_degree: int) -> list[int]:
    return [dim_piece(n, deg) - ideal_piece_dim(n, word, deg) for deg in range(0, max_degree + 1, 2)]


@dataclass
class IrredundancyReport:
    ok: bool
    inconclusive: bool
    witnesses: list[dict] = field(default_factory=list)


def irredundancy_check(n: int, word: Sequence[int] = (), pivot: int | None = None,
                       max_degree: int = 12) -> IrredundancyReport:
    """For each generator find a degree where dropping it shrinks the ideal."""
    gens = ideal_generators(n, word, pivot)
    witnesses = []
    inconclusive = False
    for idx, g in enumerate(gens):
        rest = gens[:idx] + gens[idx + 1:]
        found = None
        for deg in range(2, max_degree + 1, 2):
            full = generated_piece_dim(gens, n, deg)
            if full > generated_piece_dim(rest, n, deg):
                found = deg
                break
        if found is None:
            inconclusive = True
        witnesses.append({"generator": str(g), "degree": found})
    return IrredundancyReport(ok=not inconclusive, inconclusive=inconclusive, witnesses=witnesses)


def pivot_independent(n: int, word: Sequence[int], max_degree: int = 12) -> bool:
    """Systems built from different pivots generate the same graded pieces."""
    word = _check_word(n, word)
    dims = {
        k: [generated_piece_dim(ideal_generators(n, word, k), n, deg)
            for deg in range(0, max_degree + 1, 2)]
        for k in word
    }
    full = [ideal_piece_dim(n, word, deg) for deg in range(0, max_degree + 1, 2)]
    return all(v == full for v in dims.values())


def shifted_hilbert(n: int, word: Sequence[int]) -> RationalFn:
    """``t^d`` times the closed form, which should equal ``psi_0`` on ``(1, u_word)``."""
    return hilbert_closed_form(n, len(word)) * LaurentPoly.monomial(len(word))
