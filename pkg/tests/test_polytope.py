import itertools

import pytest

from geobound.polytope import Polytope, PolytopeError, Symmetry, build_loebell, build_polygon
from geobound.isometry import loebell_half_turn, polygon_reflections


def test_polygon_counts():
    P = build_polygon(6)
    assert P.n_facets == 6 and len(P.vertices) == 6
    P8 = build_polygon(8)
    want = {frozenset(P8.index(f) for f in (i, i % 8 + 1)) for i in range(1, 9)}
    assert set(P8.vertices) == want


def test_small_polygon_refused():
    with pytest.raises(PolytopeError):
        build_polygon(4)
    with pytest.raises(PolytopeError):
        build_loebell(4)


@pytest.mark.parametrize("m", [5, 6, 8, 12])
def test_loebell_counts(m):
    R = build_loebell(m)
    V, E, F = len(R.vertices), len(R.edges), R.n_facets
    assert F == 2 * m + 2
    # simple 3-polytope: 3V = 2E and Euler
    assert 3 * V == 2 * E and V - E + F == 2
    assert V == 4 * m and E == 6 * m
    assert all(len(v) == 3 for v in R.vertices)


def test_loebell_ring_adjacency():
    R = build_loebell(8)
    adj = R.adjacency
    i = R.index
    assert {R.facets[j] for j in adj[i("t1")]} == {"T", "t8", "t2", "b1", "b2"}
    assert {R.facets[j] for j in adj[i("b1")]} == {"B", "b8", "b2", "t8", "t1"}


@pytest.mark.parametrize("P,n", [(build_polygon(6), 12), (build_polygon(9), 18), (build_loebell(8), 32),
                                 (build_loebell(6), 24)])
def test_automorphism_counts_and_group(P, n):
    auts = P.automorphisms()
    assert len(auts) == n
    S = set(auts)
    assert Symmetry.identity(P.n_facets) in S
    for s, t in itertools.product(auts, repeat=2):
        assert s * t in S
    assert all(s.inverse() in S for s in auts)


def test_automorphisms_against_permutation_brute_force():
    P = build_polygon(6)
    brute = [Symmetry(p) for p in itertools.permutations(range(6)) if P.is_automorphism(Symmetry(p))]
    assert sorted(brute, key=lambda s: s.perm) == P.automorphisms()


def test_invariant_faces():
    P = build_polygon(6)
    assert len(P.invariant_faces(Symmetry.identity(6))) == 13
    P8 = build_polygon(8)
    r1, r2 = polygon_reflections(P8)
    assert P8.invariant_faces((r1 * r2) ** 4) == [frozenset()]
    r1, _ = polygon_reflections(P)
    names = {P.face_name(f) for f in P.invariant_faces(r1)}
    # r1 fixes edge 1 and the opposite edge 4; no vertex of a hexagon lies on its axis
    assert names == {"P", "1", "4"}


def test_reflection_conventions():
    P = build_polygon(8)
    r1, r2 = polygon_reflections(P)
    assert r1(P.index(1)) == P.index(1)
    assert r2(P.index(1)) == P.index(2)
    rot = r1 * r2
    assert rot(P.index(3)) == P.index(2)
    assert rot.order() == 8


def test_orientation_character_is_a_homomorphism():
    for P in (build_polygon(7), build_loebell(6)):
        auts = P.automorphisms()
        chars = {s: P.orientation_character(s) for s in auts}
        assert sum(1 for c in chars.values() if c == 1) == len(auts) // 2
        for s, t in itertools.product(auts[:10], auts):
            assert chars[s * t] == chars[s] * chars[t]


def test_half_turn_preserves_orientation():
    R = build_loebell(8)
    r = loebell_half_turn(R)
    assert r.order() == 2 and R.orientation_character(r) == 1
    assert R.invariant_faces(r) == [frozenset(), frozenset([R.index("T")]), frozenset([R.index("B")])]


def test_json_round_trip():
    R = build_loebell(6)
    assert Polytope.from_json(R.to_json()) == R


def test_invalid_polytopes():
    with pytest.raises(PolytopeError):
        Polytope(2, [1, 2, 3, 4, 5], [(1, 2), (2, 3), (3, 1), (4, 5)])
    with pytest.raises(PolytopeError):
        Polytope(2, [1, 2, 3], [(1, 2, 3)])
