from fractions import Fraction

from hypothesis import strategies as st

from tlcat.laurent import LaurentPoly

small_ints = st.integers(min_value=-5, max_value=5)

laurent_polys = st.dictionaries(
    st.integers(min_value=-4, max_value=4), small_ints, max_size=5
).map(LaurentPoly)


def long_division(num: dict[int, int], den: dict[int, int], D: int) -> dict[int, Fraction]:
    """Expand num/den as a power series in t by schoolbook division.

    Both arguments are plain polynomials in t (non-negative exponents) and the
    denominator must have a nonzero constant term.
    """
    rem = {e: Fraction(c) for e, c in num.items() if c}
    d0 = Fraction(den[0])
    out: dict[int, Fraction] = {}
    for e in range(D + 1):
        c = rem.pop(e, Fraction(0))
        if not c:
            continue
        q = c / d0
        out[e] = q
        for k, v in den.items():
            if k:
                rem[e + k] = rem.get(e + k, 0) - q * v
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
