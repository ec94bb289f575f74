import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlcat.diagrams import (
    Matching,
    cap_cup_factor,
    catalan,
    closure,
    compose,
    enumerate_diagrams,
    enumerate_matchings,
    flip,
    generator,
    identity,
    through_strands,
)


def arcs(m: Matching) -> set[frozenset[str]]:
    return {frozenset((m.label(a), m.label(b))) for a, b in m.pairs()}


def A(*pairs: str) -> set[frozenset[str]]:
    return {frozenset(p.split("-")) for p in pairs}


# Oracles


def brute_force_matchings(N: int) -> set[Matching]:
    """All fixed-point-free involutions on 2N points with no interleaving chords."""
    pos = list(range(N)) + list(range(2 * N - 1, N - 1, -1))  # circle order
    where = {p: i for i, p in enumerate(pos)}
    out = set()

    def pairings(points):
        if not points:
            yield []
            return
        a = points[0]
        for k in range(1, len(points)):
            rest = points[1:k] + points[k + 1:]
            for tail in pairings(rest):
                yield [(a, points[k])] + tail

    for pr in pairings(list(range(2 * N))):
        chords = [tuple(sorted((where[a], where[b]))) for a, b in pr]
        if any(a < c < b < d for (a, b), (c, d) in itertools.permutations(chords, 2)):
            continue
        p = [0] * (2 * N)
        for a, b in pr:
            p[a], p[b] = b, a
        out.add(Matching(p, N, N))
    return out


def union_find_compose(top: Matching, bottom: Matching) -> tuple[set[frozenset[str]], int]:
    """Glue two diagrams as a graph and read off boundary pairs and closed components."""
    mid = bottom.top
    parent: dict[tuple, tuple] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    def lower(a):
        return ("b", a) if a < bottom.bottom else ("m", a - bottom.bottom)

    def upper(a):
        return ("m", a) if a < mid else ("t", a - mid)

    for a, b in bottom.pairs():
        union(lower(a), lower(b))
    for a, b in top.pairs():
        union(upper(a), upper(b))
    comps: dict[tuple, list] = {}
    nodes = [("b", a) for a in range(bottom.bottom)] + [("m", a) for a in range(mid)] + \
            [("t", a) for a in range(top.top)]
    for x in nodes:
        comps.setdefault(find(x), []).append(x)
    result = set()
    loops = 0
    for members in comps.values():
        ends = [x for x in members if x[0] != "m"]
        if not ends:
            loops += 1
        else:
            assert len(ends) == 2
            result.add(frozenset(f"{k}{v + 1}" for k, v in ends))
    return result, loops


# Generators and compose


def test_generator_examples():
    assert arcs(generator(2, 1)) == A("b1-b2", "t1-t2")
    assert arcs(generator(3, 2)) == A("b2-b3", "t2-t3", "b1-t1")
    assert arcs(generator(3, 1)) == A("b1-b2", "t1-t2", "b3-t3")
    with pytest.raises(ValueError):
        generator(3, 3)


def test_compose_examples():
    assert compose(generator(2, 1), generator(2, 1)) == (generator(2, 1), 1)
    m, loops = compose(generator(3, 1), generator(3, 2))
    assert arcs(m) == A("b2-b3", "t1-t2", "b1-t3") and loops == 0
    for x in enumerate_matchings(4):
        assert compose(identity(4), x) == (x, 0)
        assert compose(x, identity(4)) == (x, 0)


def test_compose_rejects_mismatched_shapes():
    with pytest.raises(ValueError):
        compose(generator(3, 1), generator(2, 1))


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_compose_matches_union_find(N):
    basis = enumerate_matchings(N)
    for x in basis:
        for y in basis:
            m, loops = compose(x, y)
            assert (arcs(m), loops) == union_find_compose(x, y)


def test_compose_rectangular_matches_union_find():
    for b, mid, t in [(4, 2, 4), (5, 3, 1), (2, 4, 2), (3, 1, 5)]:
        for lo in enumerate_diagrams(b, mid):
            for up in enumerate_diagrams(mid, t):
                m, loops = compose(up, lo)
                assert (arcs(m), loops) == union_find_compose(up, lo)


@settings(max_examples=50)
@given(st.integers(min_value=2, max_value=6), st.data())
def test_compose_associative(N, data):
    basis = enumerate_matchings(N)
    x, y, z = (data.draw(st.sampled_from(basis)) for _ in range(3))
    xy, c1 = compose(x, y)
    left, c2 = compose(xy, z)
    yz, c3 = compose(y, z)
    right, c4 = compose(x, yz)
    assert left == right and c1 + c2 == c3 + c4


# Through strands, factorization, flip


def test_through_strand_examples():
    assert through_strands(identity(4)) == 4
    assert through_strands(generator(4, 2)) == 2
    m, _ = compose(generator(4, 1), generator(4, 3))
    assert through_strands(m) == 0


def test_cap_cup_factor_examples():
    cap, cup = cap_cup_factor(identity(3))
    assert cap == identity(3) and cup == identity(3)
    cap, cup = cap_cup_factor(generator(2, 1))
    assert (cap.bottom, cap.top) == (2, 0) and arcs(cap) == A("b1-b2")
    assert (cup.bottom, cup.top) == (0, 2) and arcs(cup) == A("t1-t2")
    # the diagram b1-b2, b3-t1, t2-t3
    m, _ = compose(generator(3, 2), generator(3, 1))
    cap, cup = cap_cup_factor(m)
    assert arcs(cap) == A("b1-b2", "b3-t1")
    assert arcs(cup) == A("b1-t1", "t2-t3")


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_cap_cup_factor_recomposes(N):
    for x in enumerate_matchings(N):
        cap, cup = cap_cup_factor(x)
        assert cap.top == cup.bottom == through_strands(x)
        assert through_strands(cap) == cap.top
        assert compose(cup, cap) == (x, 0)


def test_flip_examples():
    assert flip(identity(3)) == identity(3)
    for i in range(1, 4):
        assert flip(generator(4, i)) == generator(4, i)
    a, _ = compose(generator(3, 1), generator(3, 2))
    b, _ = compose(generator(3, 2), generator(3, 1))
    assert flip(a) == b


@pytest.mark.parametrize("N", [2, 3, 4])
def test_flip_reverses_products(N):
    basis = enumerate_matchings(N)
    for x in basis:
        assert flip(flip(x)) == x
        for y in basis:
            xy, c = compose(x, y)
            assert compose(flip(y), flip(x)) == (flip(xy), c)


# Closure


def test_closure_examples():
    inv = closure(identity(3))
    assert (inv.circles, inv.nesting) == (3, 3)
    inv = closure(generator(2, 1))
    assert (inv.circles, inv.nesting) == (1, 0)
    m, _ = compose(generator(3, 1), generator(3, 2))
    inv = closure(m)
    assert (inv.circles, inv.nesting) == (1, 1)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5, 6])
def test_closure_parity_and_bounds(N):
    for x in enumerate_matchings(N):
        inv = closure(x)
        assert inv.nesting % 2 == N % 2
        assert 0 <= inv.nesting <= inv.circles <= N
        assert closure(flip(x)) == inv


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_closure_is_conjugation_invariant(N):
    basis = enumerate_matchings(N)
    for x in basis:
        for j in range(1, N):
            u = generator(N, j)
            a, ca = compose(x, u)
            b, cb = compose(u, x)
            ia, ib = closure(a), closure(b)
            assert (ia.circles + ca, ia.nesting) == (ib.circles + cb, ib.nesting)


def test_closure_of_increasing_words():
    # an increasing word of length d has N - d circles; a run of r consecutive
    # letters merges r + 1 strands into one circle around the puncture
    from tlcat.tl_algebra import eval_word, increasing_words

    for n in range(1, 6):
        N = n + 1
        for w in increasing_words(n):
            inv = closure(eval_word(w, N)[1])
            assert inv.circles == N - len(w)
            runs = [len(list(g)) for _, g in itertools.groupby(enumerate(w), lambda p: p[1] - p[0])]
            free = N - sum(r + 1 for r in runs)
            assert inv.nesting == free + sum(1 for r in runs if r % 2 == 0)


# Enumeration


@pytest.mark.parametrize("N", [0, 1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force(N):
    got = enumerate_matchings(N)
    assert len(got) == len(set(got)) == catalan(N)
    if N:
        assert set(got) == brute_force_matchings(N)


def test_enumeration_counts():
    assert [len(enumerate_matchings(N)) for N in range(1, 7)] == [1, 2, 5, 14, 42, 132]
    with pytest.raises(ValueError):
        enumerate_matchings(9)


def test_validation_rejects_bad_pairings():
    with pytest.raises(ValueError):
        Matching([0, 1])  # fixed points
    with pytest.raises(ValueError):
        Matching([3, 2, 1, 0])  # b1-t2 crosses b2-t1
    with pytest.raises(ValueError):
        Matching([1, 2, 0, 3])  # not an involution
    assert Matching([2, 3, 0, 1]) == identity(2)


def test_json_round_trip():
    for x in enumerate_matchings(3):
        assert Matching.from_json(x.to_json()) == x
    cap, cup = cap_cup_factor(generator(3, 1))
    assert Matching.from_json(cap.to_json()) == cap
    assert Matching.from_json(cup.to_json()) == cup
