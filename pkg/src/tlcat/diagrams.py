"""Crossingless matchings, stacking, and closure in the punctured plane.

A diagram with ``b`` bottom and ``k`` top points is stored as an involution on
``range(b + k)``. Points ``0..b-1`` are the bottom points left to right and
``b..b+k-1`` are the top points left to right. Going around the boundary of the
strip (bottom left to right, then top right to left) a crossingless matching is
a balanced bracket sequence.

Square diagrams (``b == k == N``) are the basis of TL_N.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

DEFAULT_MAX_STRANDS = 8


class Matching:
    """A crossingless perfect matching between ``bottom`` and ``top`` boundary points."""

    __slots__ = ("pairing", "bottom", "top", "_hash")

    def __init__(self, pairing: Sequence[int], bottom: int | None = None,
                 top: int | None = None, check: bool = True):
        pairing = tuple(int(p) for p in pairing)
        if bottom is None and top is None:
            if len(pairing) % 2:
                raise ValueError("square matching needs an even number of points")
            bottom = top = len(pairing) // 2
        elif bottom is None:
            bottom = len(pairing) - top
        elif top is None:
            top = len(pairing) - bottom
        if bottom + top != len(pairing):
            raise ValueError("pairing length does not match bottom + top")
        self.pairing = pairing
        self.bottom = bottom
        self.top = top
        self._hash = None
        if check:
            _validate(pairing, bottom, top)

    @property
    def N(self) -> int:
        if self.bottom != self.top:
            raise ValueError("N is only defined for square matchings")
        return self.bottom

    @property
    def is_square(self) -> bool:
        return self.bottom == self.top

    def partner(self, a: int) -> int:
        return self.pairing[a]

    def is_bottom(self, a: int) -> bool:
        return a < self.bottom

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, p) for a, p in enumerate(self.pairing) if a < p]

    def label(self, a: int) -> str:
        """1-based human label: ``b3`` or ``t1``."""
        return f"b{a + 1}" if a < self.bottom else f"t{a - self.bottom + 1}"

    def __eq__(self, other):
        if not isinstance(other, Matching):
            return NotImplemented
        return (self.pairing, self.bottom) == (other.pairing, other.bottom)

    def __lt__(self, other: "Matching") -> bool:
        return (self.pairing, self.bottom) < (other.pairing, other.bottom)

    def __le__(self, other: "Matching") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Matching") -> bool:
        return other < self

    def __ge__(self, other: "Matching") -> bool:
        return other <= self

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.pairing, self.bottom))
        return self._hash

    def __repr__(self):
        arcs = " ".join(f"{self.label(a)}-{self.label(b)}" for a, b in self.pairs())
        return f"Matching({self.bottom}->{self.top}: {arcs})"

    def ascii(self) -> str:
        """Debug picture: one line listing top arcs, one listing bottom arcs."""
        top = [self.label(a) + "-" + self.label(b) for a, b in self.pairs()
               if a >= self.bottom]
        through = [self.label(a) + "|" + self.label(b) for a, b in self.pairs()
                   if a < self.bottom <= b]
        bot = [self.label(a) + "-" + self.label(b) for a, b in self.pairs()
               if b < self.bottom]
        return "\n".join([
            "top:     " + " ".join(top),
            "through: " + " ".join(through),
            "bottom:  " + " ".join(bot),
        ])

    def to_json(self):
        if self.is_square:
            return list(self.pairing)
        return {"bottom": self.bottom, "top": self.top, "pairing": list(self.pairing)}

    @classmethod
    def from_json(cls, data) -> "Matching":
        if isinstance(data, dict):
            return cls(data["pairing"], data["bottom"], data["top"])
        return cls(data)


def _circle_position(a: int, bottom: int, top: int) -> int:
    return a if a < bottom else bottom + (bottom + top - 1 - a)


def _validate(pairing: tuple[int, ...], bottom: int, top: int) -> None:
    n = len(pairing)
    for a, p in enumerate(pairing):
        if not 0 <= p < n:
            raise ValueError(f"partner {p} of point {a} out of range")
        if p == a:
            raise ValueError(f"point {a} is a fixed point")
        if pairing[p] != a:
            raise ValueError(f"pairing is not an involution at point {a}")
    order = sorted(range(n), key=lambda a: _circle_position(a, bottom, top))
    stack: list[int] = []
    for a in order:
        p = pairing[a]
        if _circle_position(p, bottom, top) > _circle_position(a, bottom, top):
            stack.append(a)
        elif not stack or stack.pop() != p:
            raise ValueError("pairing has crossing arcs")


@dataclass(frozen=True)
class ClosureInvariants:
    circles: int
    nesting: int


def identity(N: int) -> Matching:
    return Matching([a + N if a < N else a - N for a in range(2 * N)], N, N, check=False)


def generator(N: int, i: int) -> Matching:
    """``u_i`` on N strands: a cap on bottom points i, i+1 and a cup on top points i, i+1."""
    if not 1 <= i <= N - 1:
        raise ValueError(f"generator index {i} out of range 1..{N - 1}")
    p = list(identity(N).pairing)
    b0, b1 = i - 1, i
    p[b0], p[b1] = b1, b0
    t0, t1 = N + i - 1, N + i
    p[t0], p[t1] = t1, t0
    return Matching(p, N, N, check=False)


def compose(top: Matching, bottom: Matching) -> tuple[Matching, int]:
    """Stack ``top`` above ``bottom``; return the resulting diagram and the closed loops removed."""
    mid = bottom.top
    if top.bottom != mid:
        raise ValueError(f"cannot stack a {top.bottom}-bottom diagram on a {mid}-top diagram")
    nb, nt = bottom.bottom, top.top
    L, U = bottom.pairing, top.pairing
    result = [-1] * (nb + nt)
    seen = [False] * mid

    def trace_from_lower(v: int) -> int:
        # v is a point of the lower diagram
        while True:
            p = L[v]
            if p < nb:
                return p
            m = p - nb
            seen[m] = True
            q = U[m]
            if q >= mid:
                return nb + (q - mid)
            seen[q] = True
            v = nb + q

    def trace_from_upper(v: int) -> int:
        while True:
            q = U[v]
            if q >= mid:
                return nb + (q - mid)
            seen[q] = True
            p = L[nb + q]
            if p < nb:
                return p
            m = p - nb
            seen[m] = True
            v = m

    for a in range(nb):
        if result[a] < 0:
            b = trace_from_lower(a)
            result[a], result[b] = b, a
    for j in range(nt):
        a = nb + j
        if result[a] < 0:
            b = trace_from_upper(mid + j)
            result[a], result[b] = b, a

    loops = 0
    for m in range(mid):
        if seen[m]:
            continue
        loops += 1
        cur = m
        while not seen[cur]:
            seen[cur] = True
            q = U[cur]  # q < mid, else the strand would have been traced
            seen[q] = True
            cur = L[nb + q] - nb
    return Matching(result, nb, nt, check=False), loops


def through_strands(x: Matching) -> int:
    return sum(1 for a, p in enumerate(x.pairing) if a < x.bottom <= p)


def flip(x: Matching) -> Matching:
    """Vertical reflection; left-right order is preserved."""
    b, t = x.bottom, x.top

    def move(a: int) -> int:
        return a + t if a < b else a - b

    p = [0] * (b + t)
    for a, q in enumerate(x.pairing):
        p[move(a)] = move(q)
    return Matching(p, t, b, check=False)


def cap_cup_factor(x: Matching) -> tuple[Matching, Matching]:
    """Factor ``x = cup o cap`` through its through-strands.

    The cap diagram goes from ``x.bottom`` points to ``k`` points and keeps the
    bottom-to-bottom arcs; the cup diagram goes from ``k`` to ``x.top`` points and
    keeps the top-to-top arcs.
    """
    b, t = x.bottom, x.top
    through = sorted((a, p) for a, p in enumerate(x.pairing) if a < b <= p)
    k = len(through)
    cap = [-1] * (b + k)
    cup = [-1] * (k + t)
    for a, p in enumerate(x.pairing):
        if a < b and p < b:
            cap[a] = p
        elif a >= b and p >= b:
            cup[k + (a - b)] = k + (p - b)
    for s, (a, p) in enumerate(through):
        cap[a], cap[b + s] = b + s, a
        cup[s], cup[k + (p - b)] = k + (p - b), s
    return Matching(cap, b, k, check=False), Matching(cup, k, t, check=False)


def closure(x: Matching) -> ClosureInvariants:
    """Circles and nesting number of the closure of a square diagram.

    Each top point ``t_j`` is joined to ``b_j`` by an arc passing around the
    puncture on one side, all such arcs nested. A loop's winding number around
    the puncture is the signed count of closure arcs it traverses (+1 top to
    bottom, -1 bottom to top). The nesting number counts loops with nonzero
    winding.
    """
    N = x.N
    seen = [False] * (2 * N)
    circles = nesting = 0
    for start in range(2 * N):
        if seen[start]:
            continue
        circles += 1
        winding = 0
        a = start
        while True:
            seen[a] = True
            b = x.pairing[a]
            seen[b] = True
            # closure arc from b
            if b >= N:
                winding += 1
                a = b - N
            else:
                winding -= 1
                a = b + N
            if a == start:
                break
        if winding:
            nesting += 1
    return ClosureInvariants(circles, nesting)


def _noncrossing_pairings(points: int) -> Iterator[list[int]]:
    """All non-crossing perfect matchings of circle positions ``0..points-1``."""
    if points == 0:
        yield []
        return
    for j in range(1, points, 2):
        for inner in _noncrossing_pairings(j - 1):
            for outer in _noncrossing_pairings(points - j - 1):
                p = [0] * points
                p[0], p[j] = j, 0
                for a, q in enumerate(inner):
                    p[a + 1] = q + 1
                for a, q in enumerate(outer):
                    p[a + j + 1] = q + j + 1
                yield p


@functools.lru_cache(maxsize=None)
def _diagrams(bottom: int, top: int) -> tuple[Matching, ...]:
    n = bottom + top
    if n % 2:
        return ()
    pos_to_point = sorted(range(n), key=lambda a: _circle_position(a, bottom, top))
    out = []
    for p in _noncrossing_pairings(n):
        pairing = [0] * n
        for pos, q in enumerate(p):
            pairing[pos_to_point[pos]] = pos_to_point[q]
        out.append(Matching(pairing, bottom, top, check=False))
    return tuple(sorted(out))


def enumerate_diagrams(bottom: int, top: int, max_points: int = 2 * DEFAULT_MAX_STRANDS) -> list[Matching]:
    """Every crossingless matching with the given numbers of bottom and top points."""
    if bottom + top > max_points:
        raise ValueError(f"{bottom + top} boundary points exceeds the bound {max_points}")
    return list(_diagrams(bottom, top))


def enumerate_matchings(N: int, max_strands: int = DEFAULT_MAX_STRANDS) -> list[Matching]:
    """The crossingless matching basis of TL_N, sorted."""
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > max_strands:
        raise ValueError(f"N={N} exceeds the enumeration bound {max_strands}")
    return list(_diagrams(N, N))


def catalan(N: int) -> int:
    return comb(2 * N, N) // (N + 1)
