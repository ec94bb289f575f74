import itertools
import pytest

from tlcat.polyring import dim_piece, f, y_gen, z_gen
from tlcat.tl_ideal import hilbert_closed_form, series_even_prefix
from tlcat.weyl import (
    WeylLine,
    _projective_key,
    enumerate_lines,
    eval_on_line,
    expected_transverse_count,
    hyperplane_forms,
    is_transverse,
    lines_by_kernels,
    transverse_lines,
    vanishing_piece_dim,
    verify_correspondence,
)


def subsets(n):
    return [w for r in range(n + 1) for w in itertools.combinations(range(1, n + 1), r)]


def line(n, *block):
    return WeylLine(n, tuple(block))


def test_enumerate_examples():
    assert [ln.direction for ln in enumerate_lines(1)] == [(1,)]
    dirs = {ln.direction for ln in enumerate_lines(2)}
    assert dirs == {(1, 0), (1, -1), (0, 1)}
    assert len(enumerate_lines(3)) == 7


@pytest.mark.parametrize("n", range(1, 6))
def test_lines_match_kernel_enumeration(n):
    lines = enumerate_lines(n)
    assert len(lines) == 2**n - 1
    assert {_projective_key(ln.direction) for ln in lines} == lines_by_kernels(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_line_lies_on_its_hyperplanes(n):
    for ln in enumerate_lines(n):
        assert sum(ln.x_coords) == 0
        for i, j, form in hyperplane_forms(n):
            value = sum(a * b for a, b in zip(form, ln.direction))
            assert (value == 0) == ln.on_hyperplane(i, j)


def test_block_must_be_canonical():
    with pytest.raises(ValueError):
        WeylLine(2, (2,))
    with pytest.raises(ValueError):
        WeylLine(2, (1, 2, 3))


def test_transverse_examples():
    assert not is_transverse(line(2, 1, 2), (1,))  # direction (0, 1)
    assert is_transverse(line(2, 1, 3), (1,))  # direction (1, -1)
    assert len(transverse_lines(2, (1,))) == 2


def test_eval_examples():
    y = y_gen(1, 2, 2)
    assert eval_on_line(y, line(2, 1)) == 0
    assert eval_on_line(y, line(2, 1, 3)) == 0
    assert eval_on_line(z_gen(1, 2, (1,), 2), line(2, 1, 2)) == 1
    with pytest.raises(ValueError):
        eval_on_line(f(2, 1) + f(2, 1) * f(2, 2), line(2, 1))


def test_vanishing_examples():
    assert vanishing_piece_dim(2, (), 2) == 0
    assert vanishing_piece_dim(2, (), 6) == 1
    for deg in range(2, 13, 2):
        assert vanishing_piece_dim(3, (1, 2, 3), deg) == dim_piece(3, deg) - 1


@pytest.mark.parametrize("n", range(2, 6))
def test_generators_vanish_on_lines(n):
    lines = enumerate_lines(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            y = y_gen(i, j, n)
            assert all(eval_on_line(y, ln) == 0 for ln in lines)
    for w in subsets(n):
        for ln in transverse_lines(n, w):
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    assert eval_on_line(z_gen(i, j, w, n), ln) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_transverse_count_is_numerator_at_one(n):
    for w in subsets(n):
        count = len(transverse_lines(n, w))
        numerator = hilbert_closed_form(n, len(w)).num
        assert count == numerator.evaluate(1) == expected_transverse_count(n, len(w))
        if w:
            assert count == 2 ** (n - len(w))
        else:
            # every split except the trivial one gives a line
            assert count == 2**n - 1


@pytest.mark.parametrize("n", range(1, 5))
def test_hilbert_stabilises_at_line_count(n):
    for w in subsets(n):
        coeffs = series_even_prefix(hilbert_closed_form(n, len(w)), 4 * n + 4)
        assert coeffs[-1] == coeffs[-2] == len(transverse_lines(n, w))


def test_correspondence_examples():
    assert verify_correspondence(2, (), 12).ok
    for w in subsets(3):
        assert verify_correspondence(3, w, 12).ok
    assert verify_correspondence(4, (2,), 10).ok


@pytest.mark.parametrize("n", range(1, 5))
def test_correspondence_all(n):
    for w in subsets(n):
        rep = verify_correspondence(n, w, 12)
        assert rep.ok
        assert rep.to_json()["pass"]
