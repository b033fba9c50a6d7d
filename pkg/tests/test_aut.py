import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from bzf.aut import (
    IDENTITY,
    Automorphism,
    AutomorphismParseError,
    FlipOnInfiniteFamily,
    WindowTooSmall,
    apply_aut,
    classify_group,
    compose_aut,
    flip_then,
    h,
    invariant_factors,
    invert_aut,
    smith_diagonal,
    verify_aut_window,
)
from bzf.core import Element, FamilySpec, enumerate_window, mul

E = Element
A = Automorphism
FINITE = [FamilySpec.finite(k) for k in (1, 2, 3)]
F2 = FamilySpec.finite(2)
INF = FamilySpec.infinite()


def test_apply_examples():
    assert apply_aut(h(2), E(1, -1, 0), F2) == E(3, 1, 0)
    assert apply_aut(flip_then(0), E(0, 0, 0), F2) == E(0, 0, 2)
    for e in enumerate_window(1, 2, F2):
        assert apply_aut(IDENTITY, e, F2) == e


def test_compose_examples():
    assert compose_aut(A(0, True), A(0, True), F2) == A(2, False)
    assert compose_aut(A(1, True), A(2, True), F2) == A(5, False)
    assert compose_aut(A(4, False), A(0, False), F2) == A(4, False)


def test_invert_examples():
    assert invert_aut(A(0, True), F2) == A(-2, True)
    assert compose_aut(A(0, True), A(-2, True), F2) == IDENTITY
    assert invert_aut(A(5, False), F2) == A(-5, False)


def test_flip_needs_finite_family():
    with pytest.raises(FlipOnInfiniteFamily):
        apply_aut(flip_then(0), E(0, 0, 0), INF)


def test_literal_round_trip():
    for a in (A(0, False), A(-3, True), A(12, False)):
        assert Automorphism.parse(str(a)) == a
    assert str(A(5, True)) == "a*h:5"
    with pytest.raises(AutomorphismParseError):
        Automorphism.parse("g:1")


@pytest.mark.parametrize("fam", FINITE, ids=str)
def test_composition_is_pointwise(fam):
    autos = [A(s, f) for s in range(-3, 4) for f in (False, True)]
    window = enumerate_window(2, fam.k, fam)
    for a1, a2 in itertools.product(autos, repeat=2):
        c = compose_aut(a1, a2, fam)
        for e in window:
            assert apply_aut(c, e, fam) == apply_aut(a1, apply_aut(a2, e, fam), fam)


@pytest.mark.parametrize("fam", FINITE, ids=str)
def test_shift_commutes_with_flip(fam):
    for p in range(-4, 5):
        assert compose_aut(h(p), flip_then(0), fam) == compose_aut(flip_then(0), h(p), fam)


@pytest.mark.parametrize("fam", FINITE, ids=str)
def test_flip_square_and_inverse(fam):
    k = fam.k
    assert compose_aut(A(0, True), A(0, True), fam) == A(k, False)
    assert invert_aut(A(0, True), fam) == A(-k, True)
    assert invert_aut(A(0, True), fam) == compose_aut(h(-k), flip_then(0), fam)


@given(
    st.integers(1, 4),
    st.tuples(st.integers(-20, 20), st.booleans()),
    st.tuples(st.integers(-20, 20), st.booleans()),
    st.tuples(st.integers(-20, 20), st.booleans()),
)
def test_group_laws(k, x, y, z):
    fam = FamilySpec.finite(k)
    a, b, c = A(*x), A(*y), A(*z)
    assert compose_aut(compose_aut(a, b, fam), c, fam) == compose_aut(a, compose_aut(b, c, fam), fam)
    assert compose_aut(a, IDENTITY, fam) == a == compose_aut(IDENTITY, a, fam)
    assert compose_aut(a, invert_aut(a, fam), fam) == IDENTITY
    assert compose_aut(invert_aut(a, fam), a, fam) == IDENTITY


@pytest.mark.parametrize("fam", FINITE, ids=str)
def test_layer_action(fam):
    for e in enumerate_window(2, fam.k, fam):
        for s in (-2, 0, 3):
            assert apply_aut(h(s), e, fam).p == e.p
            assert apply_aut(flip_then(s), e, fam).p == fam.k - e.p


def test_verify_shift_k2():
    assert verify_aut_window(h(3), 4, 2, F2).passed


@pytest.mark.parametrize("fam", FINITE, ids=str)
def test_verify_flip(fam):
    r = verify_aut_window(flip_then(0), 4, fam.k, fam)
    assert r.passed
    n = len(enumerate_window(4, fam.k, fam))
    assert r.tested == n + n * n


def test_verify_catches_layer_rotation():
    fam = FamilySpec.finite(1)

    def rotate(e):
        return E(e.i, e.j, (e.p + 1) % 2)

    r = verify_aut_window(rotate, 2, 1, fam)
    assert not r.passed
    a, b = E(*_parse(r.counterexample["a"])), E(*_parse(r.counterexample["b"]))
    assert rotate(mul(a, b)) != mul(rotate(a), rotate(b))


def test_verify_callable_matches_kernel_path():
    for fam in FINITE:
        for a in (h(-2), flip_then(1)):
            slow = verify_aut_window(lambda e: apply_aut(a, e, fam), 2, fam.k, fam)
            fast = verify_aut_window(a, 2, fam.k, fam)
            assert slow.passed and fast.passed and slow.tested == fast.tested


def _parse(text):
    from bzf.cli import parse_element

    return tuple(parse_element(text))


def _minor_gcds(rows):
    """Invariant factors from gcds of k x k minors (determinantal divisors)."""
    m, n = len(rows), len(rows[0])

    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        return sum((-1) ** c * mat[0][c] * det([r[:c] + r[c + 1:] for r in mat[1:]]) for c in range(len(mat)))

    divisors = [1]
    for size in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), size):
            for cs in itertools.combinations(range(n), size):
                g = gcd(g, det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=3))
def test_smith_against_minors(rows):
    diag = [d for d in smith_diagonal(rows) if d != 0]
    assert diag == _minor_gcds(rows)


def test_invariant_factors_of_relation_lattice():
    assert invariant_factors(2, [[2, -2]]) == [2, "inf"]
    assert invariant_factors(2, [[3, -2]]) == ["inf"]
    assert invariant_factors(2, [[0, -2], [0, 1]]) == ["inf"]
    assert invariant_factors(1, []) == ["inf"]


def test_classify_infinite():
    r = classify_group(INF, 3)
    assert r.iso_type == "Z" and r.generator == h(1)
    assert r.paper_agreement


@pytest.mark.parametrize("k", [1, 3])
def test_classify_odd(k):
    fam = FamilySpec.finite(k)
    r = classify_group(fam, k + 2)
    assert r.iso_type == "Z"
    assert r.generator == flip_then(-(k - 1) // 2)
    assert compose_aut(r.generator, r.generator, fam) == h(1)
    assert all(r.relations_verified.values()) and all(r.checks.values())


@pytest.mark.parametrize("k", [2, 4])
def test_classify_even(k):
    fam = FamilySpec.finite(k)
    r = classify_group(fam, k + 2)
    assert r.iso_type == "Z+Z/2"
    assert r.invariant_factors == [2, "inf"]
    t = r.torsion_element
    assert t == flip_then(-k // 2)
    assert compose_aut(t, t, fam) == IDENTITY and t != IDENTITY
    assert r.paper_agreement is False
    assert all(r.relations_verified.values()) and all(r.checks.values())


def test_classify_k0_and_small_window():
    r = classify_group(FamilySpec.finite(0), 2)
    assert r.iso_type == "Z"
    with pytest.raises(WindowTooSmall):
        classify_group(F2, 3)
