"""Exact arithmetic in Z[t, t^-1] and ratios of Laurent polynomials.

Every trace and graded dimension in the toolkit is a :class:`RationalFn`.
Rational functions are never reduced to lowest terms; two of them are equal
when their cross products agree. :func:`series_prefix` turns one into a
truncated Laurent series for degree-by-degree comparison.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class LaurentPoly:
    """An immutable Laurent polynomial ``sum c_k t^k`` with exact coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c: dict[int, Scalar] = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = _normalize_scalar(v)
        self._c = c
        self._hash = None

    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> dict[int, Scalar]:
        return dict(self._c)

    def coeff(self, exponent: int) -> Scalar:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest term")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no highest term")
        return max(self._c)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``t -> t^-1``."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def evaluate(self, t: Scalar) -> Fraction:
        t = Fraction(t)
        return sum((Fraction(v) * t**e for e, v in self._c.items()), Fraction(0))

    # arithmetic

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, Scalar] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "LaurentPoly":
        if m < 0:
            if len(self._c) == 1:
                ((e, v),) = self._c.items()
                if abs(v) == 1:
                    return LaurentPoly({e * m: v ** (-m)})
            raise ValueError("only monomial units have negative powers in Z[t,t^-1]")
        result = ONE
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def __truediv__(self, other):
        return RationalFn(self, 1) / other

    def __rtruediv__(self, other):
        return RationalFn(other, 1) / self

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Return ``self / other`` if it is a Laurent polynomial, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        rem = dict(self._c)
        lo_d, hi_d = other.min_exp(), other.max_exp()
        lead = other._c[hi_d]
        quot: dict[int, Scalar] = {}
        lo_self = self.min_exp()
        while rem:
            top = max(rem)
            if top - hi_d < lo_self - lo_d:
                return None
            q = Fraction(rem[top]) / lead
            q = _normalize_scalar(q)
            quot[top - hi_d] = q
            for e, v in other._c.items():
                k = e + top - hi_d
                nv = rem.get(k, 0) - q * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    # comparison / hashing

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict[str, int | str]:
        return {str(e): _scalar_to_json(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int | str]) -> "LaurentPoly":
        return cls({int(k): _scalar_from_json(v) for k, v in data.items()})


def _normalize_scalar(v: Scalar) -> Scalar:
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, (int, Fraction)):
        return v
    if isinstance(v, Rational):
        return _normalize_scalar(Fraction(v))
    raise TypeError(f"inexact coefficient {v!r}")


def _scalar_to_json(v: Scalar) -> int | str:
    return v if isinstance(v, int) else f"{v.numerator}/{v.denominator}"


def _scalar_from_json(v: int | str) -> Scalar:
    return _normalize_scalar(Fraction(v))


def _as_laurent(x) -> "LaurentPoly":
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)
QTWO = LaurentPoly({1: 1, -1: 1})


def quantum_two_pow(m: int) -> LaurentPoly:
    """``[2]^m = (t + t^-1)^m`` for ``m >= 0``."""
    if m < 0:
        raise ValueError("quantum_two_pow needs m >= 0")
    return QTWO**m


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


class RationalFn:
    """A ratio of Laurent polynomials, compared by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFn needs Laurent polynomial or scalar parts")
        if den.is_zero():
            raise ZeroDivisionError("RationalFn denominator is zero")
        self.num = num
        self.den = den

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFn(other, ONE)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, m: int) -> "RationalFn":
        if m >= 0:
            return RationalFn(self.num**m, self.den**m)
        return RationalFn(self.den ** (-m), self.num ** (-m))

    def bar(self) -> "RationalFn":
        return RationalFn(self.num.bar(), self.den.bar())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is not structural

    def simplified(self) -> "RationalFn":
        """Cancel common factors from a short list of known divisors (display only)."""
        num, den = self.num, self.den
        if num.is_zero():
            return RationalFn(ZERO, ONE)
        q = num.divide_exact(den)
        if q is not None:
            return RationalFn(q, ONE)
        for f in _CANCEL_CANDIDATES:
            while True:
                a, b = num.divide_exact(f), den.divide_exact(f)
                if a is None or b is None:
                    break
                num, den = a, b
        shift = den.min_exp()
        num, den = num.shift(-shift), den.shift(-shift)
        if den.coeff(0) < 0:
            num, den = -num, -den
        return RationalFn(num, den)

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        s = self.simplified()
        if s.den == ONE:
            return str(s.num)
        return f"({s.num})/({s.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalFn":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


_CANCEL_CANDIDATES = (
    QTWO,
    LaurentPoly({0: 1, 2: -1}),
    LaurentPoly({0: 1, 1: 1}),
    LaurentPoly({0: 1, 1: -1}),
    LaurentPoly({0: 1, 2: 1}),
)


def series_prefix(r: RationalFn, D: int) -> list[Scalar]:
    """Coefficients of the Laurent expansion of ``r`` at ``t^-D, ..., t^D``.

    The expansion is the one bounded below in t-degree. After pulling out the
    lowest power of ``t`` the denominator must have constant term +-1.
    """
    if D < 0:
        raise ValueError("D must be non-negative")
    out: list[Scalar] = [0] * (2 * D + 1)
    if r.num.is_zero():
        return out
    den_shift = r.den.min_exp()
    q = r.den.shift(-den_shift)
    q0 = q.coeff(0)
    if q0 not in (1, -1):
        raise ValueError(f"denominator {r.den} has no invertible lowest term")
    num_lo = r.num.min_exp()
    lo = num_lo - den_shift
    if lo > D:
        return out
    # series of 1/q up to the degree needed for exponent D
    need = D - lo
    qc = [q.coeff(k) for k in range(need + 1)]
    inv = [0] * (need + 1)
    inv[0] = q0  # 1/q0 == q0 for a unit
    for k in range(1, need + 1):
        s = sum(qc[j] * inv[k - j] for j in range(1, k + 1))
        inv[k] = -s * q0
    for e in range(max(lo, -D), D + 1):
        total = 0
        for j, v in r.num._c.items():
            k = e + den_shift - j
            if 0 <= k <= need:
                total += v * inv[k]
        out[e + D] = _normalize_scalar(total) if total else 0
    return out


def even_coefficients(r: RationalFn, D: int) -> list[Scalar]:
    """Coefficients of ``t^0, t^2, ..., t^(2*floor(D/2))`` in the expansion of ``r``."""
    full = series_prefix(r, D)
    return [full[D + e] for e in range(0, D + 1, 2)]


def laurent_sum(terms: Iterable[LaurentPoly]) -> LaurentPoly:
    total = ZERO
    for p in terms:
        total = total + p
    return total


ONE_MINUS_T2 = LaurentPoly({0: 1, 2: -1})
ONE_PLUS_T2 = LaurentPoly({0: 1, 2: 1})
