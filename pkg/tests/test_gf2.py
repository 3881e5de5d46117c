import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geobound import gf2
from geobound.gf2 import BitMatrix, Subspace, unit

E1, E2, E3 = unit(1), unit(2), unit(3)


def brute_functional(colours, dim):
    return [f for f in range(1 << dim) if all(gf2.dot(f, c) == 1 for c in colours)]


def test_vector_wire_format():
    assert gf2.to_bits(E1 ^ E3, 3) == [1, 0, 1]
    assert gf2.from_bits([0, 1, 1]) == E2 ^ E3
    assert gf2.format_vector(E1 ^ E3, 3) == "e1+e3"
    with pytest.raises(ValueError):
        gf2.to_bits(8, 3)
    with pytest.raises(ValueError):
        gf2.vec(0, 2)


@pytest.mark.parametrize("colours,dim,want", [
    ([E1, E2], 2, 0b11),
    ([E1, E2, E3, E1 ^ E2 ^ E3], 3, 0b111),
    ([E1, E1 ^ E2], 2, 0b01),
])
def test_unit_functional_examples(colours, dim, want):
    assert gf2.solve_unit_functional(colours, dim) == want


def test_unit_functional_absent():
    assert gf2.solve_unit_functional([E1, E2, E1 ^ E2], 2) is None


def test_unit_functional_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        gf2.solve_unit_functional([E3], 2)


@pytest.mark.parametrize("dim", [1, 2, 3, 4])
def test_unit_functional_matches_brute_force(dim):
    vectors = range(1, 1 << dim)
    for k in range(1, min(4, len(vectors)) + 1):
        for colours in itertools.combinations(vectors, k):
            sols = brute_functional(colours, dim)
            f = gf2.solve_unit_functional(list(colours), dim)
            assert (f is not None) == bool(sols)
            if f is not None:
                assert f in sols


def test_subspace_examples():
    s = gf2.span([E1, E2], 2)
    assert gf2.member(E1 ^ E2, s)
    assert gf2.image_plus_identity(BitMatrix.identity(2)).dim == 0
    swap = BitMatrix.from_images([E2, E1], 2)
    assert gf2.image_plus_identity(swap) == gf2.span([E1 ^ E2], 2)
    with pytest.raises(ValueError):
        gf2.subspace_sum(gf2.span([E1], 2), gf2.span([E1], 3))


def test_sum_membership_by_enumeration():
    dim = 4
    spaces = [gf2.span(vs, dim) for vs in itertools.combinations(range(1, 16), 2)][:40]
    for s, t in itertools.product(spaces[:12], spaces[12:24]):
        total = s + t
        direct = {a ^ b for a in s.elements() for b in t.elements()}
        assert {w for w in range(16) if w in total} == direct


def test_echelon_is_canonical():
    a = gf2.echelon([0b011, 0b110])
    b = gf2.echelon([0b101, 0b011])
    assert a == b


def test_coset_rep_is_lex_minimal():
    s = gf2.span([E1 ^ E2], 3)
    # e1 first: among {e2, e1} the vector with e1 = 0 wins
    assert s.coset_rep(E1) == E2
    assert len(s.cosets()) == 4


@pytest.mark.parametrize("dim,count", [(1, 1), (2, 6), (3, 168)])
def test_enumerate_gl_counts(dim, count):
    mats = gf2.enumerate_gl(dim)
    assert len(mats) == count == gf2.gl_order(dim)
    assert len(set(mats)) == count
    assert all(m.rank() == dim for m in mats)


def test_enumerate_gl_refuses_large():
    with pytest.raises(ValueError):
        gf2.enumerate_gl(5)


def test_matrix_rows_and_inverse():
    m = BitMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 1, 1]])
    assert m.rows() == [[1, 1, 0], [0, 1, 0], [0, 1, 1]]
    assert m(E2) == E1 ^ E2 ^ E3
    assert m @ m.inverse() == BitMatrix.identity(3)


vectors3 = st.integers(min_value=0, max_value=7)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 7), min_size=3, max_size=3))
def test_solve_linear_map_recovers_matrix(cols):
    m = BitMatrix(tuple(cols), 3)
    srcs = [E1 ^ E2, E2, E2 ^ E3, E1 ^ E2 ^ E3]
    got = gf2.solve_linear_map([(s, m(s)) for s in srcs], 3, 3)
    assert got == m


@settings(max_examples=200, deadline=None)
@given(st.lists(vectors3, min_size=0, max_size=5))
def test_span_closed_under_addition(vs):
    s = gf2.span(vs, 3)
    els = s.elements()
    assert all((a ^ b) in s for a in els for b in els)
    assert len(els) == 1 << gf2.rank(vs)
