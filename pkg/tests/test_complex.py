from fractions import Fraction

import pytest

from geobound.colouring import E1, E2, E3, family_colouring, polygon_cyclic
from geobound.complex import (CellMap, ComplexError, NonFreeActionError, analyze, close_maps,
                              fundamental_cycle_ok, is_cellular_automorphism, isomorphic, lift_map,
                              quotient, realize, subdivide)
from geobound.isometry import IsometryGroup, polygon_reflections


def orbifold_euler(P):
    if P.dim == 2:
        return Fraction(4 - P.n_facets, 4)
    # right-angled 3-polytope: 1 - F/2 + E/4 - V/8
    return 1 - Fraction(P.n_facets, 2) + Fraction(len(P.edges), 4) - Fraction(len(P.vertices), 8)


def test_am_counts():
    C = realize(family_colouring("am", 2))
    assert C.counts() == (6, 12, 4)
    a = analyze(C)
    assert (a.euler, a.components, a.orientable, a.genus) == (-2, 1, True, 2)


@pytest.mark.parametrize("family,g", [("am", 3), ("wiman", 2), ("kulkarni", 3), ("kulkarni", 7),
                                      ("loebell-am", 3), ("loebell-wiman", 2), ("loebell-kulkarni", 3)])
def test_euler_is_degree_times_orbifold_euler(family, g):
    lam = family_colouring(family, g)
    C = realize(lam)
    assert C.euler() == 2 ** lam.rank * orbifold_euler(lam.polytope)
    assert C.counts()[-1] == 2 ** lam.rank
    a = analyze(C)
    assert a.components == 1 and a.closed and a.orientable
    assert C.check_chain_complex()
    assert fundamental_cycle_ok(C, a.orientation)


def test_kulkarni_genus():
    assert analyze(realize(family_colouring("kulkarni", 3))).genus == 5


def test_loebell_top_cells():
    C = realize(family_colouring("loebell-am", 3))
    assert C.counts()[3] == 8 and C.euler() == 0


def test_improper_refused():
    lam = polygon_cyclic(6, (E1, E1, E2), 2)
    with pytest.raises(ComplexError):
        realize(lam)


def test_non_orientable_detected():
    lam = polygon_cyclic(6, (E1, E2, E1 ^ E2, E3, E1, E2), 3)
    a = analyze(realize(lam))
    assert not a.orientable and a.genus is None and a.closed


def test_quotient_examples():
    lam = family_colouring("am", 3)
    G = IsometryGroup(lam)
    C = G.complex
    assert isomorphic(quotient(C, [CellMap.identity(C)]), C) is not None
    r1, _ = polygon_reflections(lam.polytope)
    t = G.element(r1, E1 ^ E2)
    Q = quotient(C, [G.cell_map(t)])
    assert [2 * n for n in Q.counts()] == list(C.counts())
    assert 2 * Q.euler() == C.euler()
    assert not analyze(Q).orientable
    with pytest.raises(NonFreeActionError):
        quotient(C, [G.cell_map(G.element(r1, 0))])


def test_isomorphism_negative_and_positive():
    C2 = realize(family_colouring("am", 2))
    C3 = realize(family_colouring("am", 3))
    assert isomorphic(C2, C3) is None
    f = isomorphic(C3, C3)
    assert f is not None and is_cellular_automorphism(C3, f)


def test_isomorphism_finds_relabelled_copy():
    lam = family_colouring("am", 3)
    G = IsometryGroup(lam)
    C = G.complex
    f = G.cell_map(G.elements[7])
    assert is_cellular_automorphism(C, f)
    # the complex with cells permuted by f is found isomorphic
    from geobound.complex import CellComplex
    inv = f.inverse()
    labels = [[C.labels[d][inv(d, i)] for i in range(len(C.labels[d]))] for d in range(3)]
    boundary = [[tuple((f(d - 1, j), s) for j, s in C.boundary[d][inv(d, i)]) if d else ()
                 for i in range(len(C.labels[d]))] for d in range(3)]
    D = CellComplex(2, labels, boundary)
    h = isomorphic(C, D)
    assert h is not None


def test_subdivision():
    C = realize(family_colouring("am", 2))
    S = subdivide(C)
    assert S.euler() == C.euler()
    # each hexagon becomes 12 triangles
    assert S.counts()[2] == 12 * C.counts()[2]
    SS = subdivide(S)
    assert SS.euler() == C.euler() and analyze(SS).genus == 2


def test_lift_preserves_group_order():
    lam = family_colouring("am", 2)
    G = IsometryGroup(lam)
    gens = [G.cell_map(G.elements[5]), G.cell_map(G.elements[13])]
    S = subdivide(G.complex)
    lifted = [lift_map(G.complex, S, f) for f in gens]
    assert all(is_cellular_automorphism(S, f) for f in lifted)
    assert len(close_maps(lifted, S)) == len(close_maps(gens, G.complex))
