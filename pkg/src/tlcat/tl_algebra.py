"""The Temperley-Lieb algebra TL_N over Z[t, t^-1], traces and pairings.

Products follow the stacking convention ``x * y = compose(x, y)``: ``x`` sits on
top of ``y``. A word ``i_1 ... i_d`` is the product ``u_{i_1} * ... * u_{i_d}``,
so its first letter is the top layer. The semi-linear pairing is
``(x, y) = trace(flip(x) * y)``, i.e. ``y`` placed below an upside-down ``x``.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .diagrams import (
    Matching,
    closure,
    compose,
    enumerate_matchings,
    flip,
    generator,
    identity,
)
from .laurent import (
    ONE_MINUS_T2,
    QTWO,
    LaurentPoly,
    RationalFn,
    T,
    quantum_two_pow,
)

Word = tuple[int, ...]


class TLElement:
    """A finite combination of N-strand matchings with Laurent coefficients."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: Mapping[Matching, LaurentPoly] | None = None):
        self.N = N
        clean: dict[Matching, LaurentPoly] = {}
        for m, c in (terms or {}).items():
            if m.bottom != N or m.top != N:
                raise ValueError(f"matching {m!r} is not an element of TL_{N}")
            c = c if isinstance(c, LaurentPoly) else LaurentPoly.const(c)
            if not c.is_zero():
                clean[m] = c
        self.terms = clean

    @classmethod
    def basis(cls, m: Matching, coeff: LaurentPoly | int = 1) -> "TLElement":
        return cls(m.N, {m: coeff})

    @classmethod
    def one(cls, N: int) -> "TLElement":
        return cls.basis(identity(N))

    @classmethod
    def u(cls, N: int, i: int) -> "TLElement":
        return cls.basis(generator(N, i))

    @classmethod
    def word(cls, N: int, w: Sequence[int]) -> "TLElement":
        scalar, m = eval_word(w, N)
        return cls.basis(m, scalar)

    def _check(self, other: "TLElement") -> None:
        if self.N != other.N:
            raise ValueError(f"TL_{self.N} and TL_{other.N} elements do not combine")

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, LaurentPoly()) + c
        return TLElement(self.N, terms)

    def __neg__(self) -> "TLElement":
        return TLElement(self.N, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TLElement):
            self._check(other)
            terms: dict[Matching, LaurentPoly] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m, loops = compose(m1, m2)
                    terms[m] = terms.get(m, LaurentPoly()) + c1 * c2 * quantum_two_pow(loops)
            return TLElement(self.N, terms)
        if isinstance(other, (LaurentPoly, int)):
            return TLElement(self.N, {m: c * other for m, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (LaurentPoly, int)):
            return self * other
        return NotImplemented

    def flip(self) -> "TLElement":
        """The t-antilinear anti-involution: flip every diagram, bar every coefficient."""
        return TLElement(self.N, {flip(m): c.bar() for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TLElement):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})*{m!r}" for m, c in sorted(self.terms.items()))
        return f"TLElement(N={self.N}: {body or '0'})"


def eval_word(w: Sequence[int], N: int) -> tuple[LaurentPoly, Matching]:
    """Evaluate ``u_{w_1} ... u_{w_d}`` to ``[2]^c`` times a single matching."""
    m = identity(N)
    loops = 0
    for i in w:
        m, c = compose(m, generator(N, i))
        loops += c
    return quantum_two_pow(loops), m


@dataclass
class TraceSpec:
    """Per-nesting-number scale factors; a matching's value is ``c_nu * [2]^circles``."""

    N: int
    weights: dict[int, RationalFn] = field(default_factory=dict)

    def weight(self, nesting: int) -> RationalFn:
        return self.weights.get(nesting, RationalFn(0))

    def value(self, m: Matching) -> RationalFn:
        inv = closure(m)
        c = self.weight(inv.nesting)
        if c.is_zero():
            return RationalFn(0)
        return c * quantum_two_pow(inv.circles)


def spec_std(N: int) -> TraceSpec:
    return TraceSpec(N, {nu: RationalFn(1) for nu in range(N % 2, N + 1, 2)})


def spec_triv(N: int) -> TraceSpec:
    return TraceSpec(N, {N: RationalFn(1, quantum_two_pow(N))})


def spec_psi0(N: int) -> TraceSpec:
    """``t^n/((1-t^2)[2]) psi_std - t^2/(1-t^2) psi_triv`` with ``n = N - 1``."""
    n = N - 1
    base = RationalFn(T**n, ONE_MINUS_T2 * QTWO)
    weights = {nu: base for nu in range(N % 2, N, 2)}
    weights[N] = base - RationalFn(T**2, ONE_MINUS_T2 * quantum_two_pow(N))
    return TraceSpec(N, weights)


SPECS = {"std": spec_std, "triv": spec_triv, "psi0": spec_psi0}


def trace(spec: TraceSpec, e: TLElement) -> RationalFn:
    if spec.N != e.N:
        raise ValueError("trace and element live on different strand counts")
    total = RationalFn(0)
    for m, c in e.terms.items():
        v = spec.value(m)
        if not v.is_zero():
            total = total + v * c
    return total


def pairing(spec: TraceSpec, x: TLElement, y: TLElement) -> RationalFn:
    """Semi-linear pairing ``trace(flip(x) * y)``; conjugate-linear in ``x``."""
    return trace(spec, x.flip() * y)


def gram_matrix(spec: TraceSpec, basis: Sequence[Matching] | None = None) -> list[list[RationalFn]]:
    basis = list(basis) if basis is not None else enumerate_matchings(spec.N)
    elems = [TLElement.basis(m) for m in basis]
    return [[pairing(spec, x, y) for y in elems] for x in elems]


# Words and the 321-avoiding normal form


def is_increasing(w: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(w, w[1:]))


def is_non_repeating(w: Sequence[int]) -> bool:
    return len(set(w)) == len(w)


def increasing_words(n: int) -> list[Word]:
    """All increasing words over ``1..n`` (subsets in increasing order)."""
    out: list[Word] = []
    for mask in range(1 << n):
        out.append(tuple(i + 1 for i in range(n) if mask >> i & 1))
    return sorted(out, key=lambda w: (len(w), w))


def word_permutation(w: Sequence[int], N: int) -> tuple[int, ...]:
    """The permutation ``s_{w_1} ... s_{w_d}`` of ``0..N-1`` in one-line notation."""
    perm = list(range(N))
    for i in w:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def is_321_avoiding(perm: Sequence[int]) -> bool:
    n = len(perm)
    for j in range(n):
        left = any(perm[i] > perm[j] for i in range(j))
        right = any(perm[k] < perm[j] for k in range(j + 1, n))
        if left and right:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _normal_words(N: int) -> dict[Matching, Word]:
    words: dict[Matching, Word] = {identity(N): ()}
    queue = deque([identity(N)])
    while queue:
        m = queue.popleft()
        w = words[m]
        for i in range(1, N):
            nxt, loops = compose(m, generator(N, i))
            if loops == 0 and nxt not in words:
                words[nxt] = w + (i,)
                queue.append(nxt)
    return words


def normal_word(x: Matching) -> Word:
    """A shortest word evaluating to ``x`` with scalar 1 (a 321-avoiding reduced word)."""
    return _normal_words(x.N)[x]


def traces_determined_by_increasing(N: int) -> bool:
    """Check that a trace's values on increasing words fix all its nesting weights.

    Each nesting number must be realised by the closure of some increasing word,
    and that closure then pins down the corresponding weight.
    """
    needed = set(range(N % 2, N + 1, 2))
    hit = {closure(eval_word(w, N)[1]).nesting for w in increasing_words(N - 1)}
    return needed <= hit


def specs_agree_on_increasing(a: TraceSpec, b: TraceSpec) -> bool:
    N = a.N
    return all(
        trace(a, TLElement.word(N, w)) == trace(b, TLElement.word(N, w))
        for w in increasing_words(N - 1)
    )


def specs_agree_on_basis(a: TraceSpec, b: TraceSpec) -> bool:
    return all(a.value(m) == b.value(m) for m in enumerate_matchings(a.N))


def psi0_closed_form(n: int, d: int) -> RationalFn:
    """Value of ``(1, u_i)`` under psi_0 for a non-repeating word of length ``d``."""
    value = RationalFn(T**n * quantum_two_pow(n - d), ONE_MINUS_T2)
    if d == 0:
        value = value - RationalFn(T**2, ONE_MINUS_T2)
    return value


def elements_from(N: int, words: Iterable[Sequence[int]]) -> list[TLElement]:
    return [TLElement.word(N, w) for w in words]

