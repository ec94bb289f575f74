import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import laurent_polys
from tlcat.diagrams import closure, compose, enumerate_matchings, flip, generator, identity
from tlcat.laurent import ONE, ONE_MINUS_T2, QTWO, T, RationalFn, quantum_two_pow
from tlcat.tl_algebra import (
    SPECS,
    TLElement,
    TraceSpec,
    eval_word,
    gram_matrix,
    increasing_words,
    inversions,
    is_321_avoiding,
    normal_word,
    pairing,
    psi0_closed_form,
    spec_psi0,
    spec_std,
    spec_triv,
    specs_agree_on_basis,
    specs_agree_on_increasing,
    trace,
    traces_determined_by_increasing,
    word_permutation,
)


def R(num, den=1):
    return RationalFn(num, den)


def test_eval_word_examples():
    assert eval_word([1, 2, 1], 3) == (ONE, generator(3, 1))
    assert eval_word([1, 1], 2) == (QTWO, generator(2, 1))
    scalar, m = eval_word([1, 3], 4)
    assert scalar == ONE
    assert m == compose(generator(4, 1), generator(4, 3))[0]
    assert {m.partner(0), m.partner(2), m.partner(4), m.partner(6)} == {1, 3, 5, 7}


@pytest.mark.parametrize("N", range(2, 7))
def test_relations(N):
    for i in range(1, N):
        assert eval_word([i, i], N) == (QTWO, generator(N, i))
        for j in range(1, N):
            if abs(i - j) >= 2:
                assert eval_word([i, j], N) == eval_word([j, i], N)
            if abs(i - j) == 1:
                assert eval_word([i, j, i], N) == (ONE, generator(N, i))


def test_word_order_puts_first_letter_on_top():
    # u_1 u_2 has its top cup at positions 1, 2
    m = eval_word([1, 2], 3)[1]
    assert m.partner(3) == 4
    assert TLElement.word(3, [1, 2]) == TLElement.u(3, 1) * TLElement.u(3, 2)


def elements(N):
    basis = enumerate_matchings(N)
    return st.lists(st.tuples(st.sampled_from(basis), laurent_polys), max_size=3).map(
        lambda items: sum((TLElement.basis(m, c) for m, c in items), TLElement(N))
    )


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_multiplication_associative(data):
    N = data.draw(st.integers(min_value=1, max_value=5))
    x, y, z = (data.draw(elements(N)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert TLElement.one(N) * x == x == x * TLElement.one(N)


def test_zero_terms_dropped():
    x = TLElement.u(3, 1) - TLElement.u(3, 1)
    assert x.terms == {}
    with pytest.raises(ValueError):
        TLElement.u(3, 1) + TLElement.u(4, 1)


def test_flip_is_antilinear_antihomomorphism():
    x = TLElement.basis(generator(3, 1), T**2) + TLElement.basis(identity(3), 3)
    y = TLElement.word(3, [2, 1])
    assert (x * y).flip() == y.flip() * x.flip()
    assert x.flip().terms[generator(3, 1)] == T**-2


# Trace values


def test_trace_examples():
    w = TLElement.word(10, [1, 2, 3, 6, 7, 9])
    assert trace(spec_std(10), w) == R(QTWO**4)
    assert trace(spec_triv(3), TLElement.one(3)) == R(1)
    assert trace(spec_triv(3), TLElement.u(3, 1)).is_zero()
    assert spec_std(3).value(identity(3)) == R(QTWO**3)
    assert spec_triv(2).value(generator(2, 1)).is_zero()


def test_pairing_examples():
    psi = spec_psi0(2)
    one = TLElement.one(2)
    assert pairing(psi, one, one) == R(1, ONE_MINUS_T2)
    psi = spec_psi0(4)
    assert pairing(psi, TLElement.one(4), TLElement.word(4, [1, 3])) == R(T**3 * QTWO, ONE_MINUS_T2)
    psi = spec_psi0(3)
    one = TLElement.one(3)
    assert pairing(psi, one, one) == R(T**2 * QTWO**2, ONE_MINUS_T2) - R(T**2, ONE_MINUS_T2)


def test_psi0_self_pairing_of_generator():
    # u_1 over flip(u_1) closes to all N circles with nesting N, so the value is
    # t^n [2]^n/(1-t^2) - t^2/(1-t^2) evaluated with the extra circle factor [2]
    psi = spec_psi0(3)
    u = TLElement.u(3, 1)
    value = pairing(psi, u, u)
    assert value == R(T**2 * QTWO**2, ONE_MINUS_T2)
    assert value == R((1 + T**2) ** 2, ONE_MINUS_T2)


def test_psi0_self_pairings_are_normalised():
    # for x != 1 the self-pairing has m = N circles with lower nesting
    for N in range(2, 6):
        psi = spec_psi0(N)
        for x in enumerate_matchings(N):
            if x == identity(N):
                continue
            e = TLElement.basis(x)
            assert pairing(psi, e, e) == R(T ** (N - 1) * QTWO ** (N - 1), ONE_MINUS_T2)


def test_pairing_semilinear():
    psi = spec_psi0(3)
    x = TLElement.u(3, 1)
    y = TLElement.u(3, 2)
    assert pairing(psi, x * T, y) == pairing(psi, x, y) * T**-1
    assert pairing(psi, x, y * T) == pairing(psi, x, y) * T


@pytest.mark.parametrize("N", range(1, 6))
@pytest.mark.parametrize("name", sorted(SPECS))
def test_trace_cyclic_and_adjoint(N, name):
    spec = SPECS[name](N)
    basis = enumerate_matchings(N)
    for m in basis:
        x = TLElement.basis(m)
        for j in range(1, N):
            u = TLElement.u(N, j)
            assert trace(spec, x * u) == trace(spec, u * x)
    if N <= 4:
        for a in basis:
            for b in basis:
                x, y = TLElement.basis(a), TLElement.basis(b)
                for j in range(1, N):
                    u = TLElement.u(N, j)
                    assert pairing(spec, x * u, y) == pairing(spec, x, y * u)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_trace_cyclic_on_random_pairs(data):
    N = data.draw(st.integers(min_value=2, max_value=5))
    basis = enumerate_matchings(N)
    x = TLElement.basis(data.draw(st.sampled_from(basis)))
    y = TLElement.basis(data.draw(st.sampled_from(basis)))
    for build in SPECS.values():
        spec = build(N)
        assert trace(spec, x * y) == trace(spec, y * x)


@pytest.mark.parametrize("n", range(1, 6))
def test_psi0_closed_form(n):
    N = n + 1
    psi = spec_psi0(N)
    one = TLElement.one(N)
    for w in increasing_words(n):
        assert pairing(psi, one, TLElement.word(N, w)) == psi0_closed_form(n, len(w))
    assert pairing(psi, one, one) == R(T**n * QTWO**n, ONE_MINUS_T2) - R(T**2, ONE_MINUS_T2)


@pytest.mark.parametrize("N", range(1, 7))
def test_psi0_decomposition(N):
    n = N - 1
    psi, std, triv = spec_psi0(N), spec_std(N), spec_triv(N)
    a = R(T**n, ONE_MINUS_T2 * QTWO)
    b = R(T**2, ONE_MINUS_T2)
    for m in enumerate_matchings(N):
        assert psi.value(m) == std.value(m) * a - triv.value(m) * b


def test_std_on_increasing_words():
    for n in range(1, 6):
        N = n + 1
        for w in increasing_words(n):
            assert trace(spec_std(N), TLElement.word(N, w)) == R(QTWO ** (N - len(w)))


@pytest.mark.parametrize("N", range(1, 6))
def test_traces_determined_by_increasing_words(N):
    assert traces_determined_by_increasing(N)
    # perturbing one nesting weight is detected on increasing words
    base = spec_psi0(N)
    for nu in range(N % 2, N + 1, 2):
        weights = dict(base.weights)
        weights[nu] = weights.get(nu, R(0)) + R(1)
        other = TraceSpec(N, weights)
        assert not specs_agree_on_increasing(base, other)
        assert not specs_agree_on_basis(base, other)
    assert specs_agree_on_increasing(base, spec_psi0(N))


@pytest.mark.parametrize("N", range(1, 7))
def test_circle_count_theorem(N):
    basis = enumerate_matchings(N)
    for x in basis:
        for y in basis:
            m, loops = compose(x, flip(y))
            circles = loops + closure(m).circles
            if x == y:
                assert circles == N
            else:
                assert circles < N


def test_gram_matrix_shape_and_symmetry():
    g = gram_matrix(spec_psi0(3))
    assert len(g) == 5 and all(len(r) == 5 for r in g)
    for i in range(5):
        for j in range(5):
            assert g[i][j] == g[j][i]


@pytest.mark.parametrize("N", range(1, 6))
def test_normal_words(N):
    for m in enumerate_matchings(N):
        w = normal_word(m)
        assert eval_word(w, N) == (ONE, m)
        perm = word_permutation(w, N)
        assert inversions(perm) == len(w)
        assert is_321_avoiding(perm)


def test_quantum_power_helper_consistency():
    assert quantum_two_pow(3) == QTWO * QTWO * QTWO
