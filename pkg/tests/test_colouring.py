import itertools

import pytest

from geobound import gf2
from geobound.colouring import (E1, E2, E3, E4, E123, Colouring, ColouringError, are_equivalent,
                                are_equivalent_bruteforce, family_colouring, induced_colouring,
                                is_orientable_colouring, is_proper, polygon_cyclic, pushforward)
from geobound.gf2 import BitMatrix
from geobound.polytope import build_polygon


def test_family_examples():
    am = family_colouring("am", 2)
    assert am.rank == 2 and am.colours == (E1, E2) * 3
    k = family_colouring("kulkarni", 3)
    assert k.rank == 3 and k.colours == (E1, E2, E3, E123) * 2
    with pytest.raises(ColouringError):
        family_colouring("kulkarni", 5)
    with pytest.raises(ColouringError):
        family_colouring("am", 1)
    with pytest.raises(ColouringError):
        family_colouring("nope", 3)


@pytest.mark.parametrize("g", range(2, 9))
def test_am_proper_and_orientable(g):
    lam = family_colouring("am", g)
    assert is_proper(lam) and is_orientable_colouring(lam)
    L = family_colouring("loebell-am", g)
    assert is_proper(L) and is_orientable_colouring(L)


def test_constant_colouring_is_improper():
    lam = Colouring(build_polygon(6), 1, (E1,) * 6)
    assert not is_proper(lam)
    with pytest.raises(ColouringError):
        is_orientable_colouring(lam)


def test_loebell_kulkarni_proper():
    for g in (3, 7, 11):
        L = family_colouring("loebell-kulkarni", g)
        assert L.rank == 4 and is_proper(L) and is_orientable_colouring(L)
        assert L["T"] == L["B"] == E4 and L["t1"] == E1 and L["b1"] == E3


def test_non_orientable_rank3_hexagon():
    lam = polygon_cyclic(6, (E1, E2, E1 ^ E2, E3, E1, E2), 3)
    assert is_proper(lam)
    assert not is_orientable_colouring(lam)


def test_surjectivity_required():
    with pytest.raises(ColouringError):
        Colouring(build_polygon(6), 3, (E1, E2) * 3)


def _orientable_by_equivalence(lam):
    # oracle: some change of basis makes every colour of odd weight
    return any(all(gf2.weight(phi(c)) % 2 for c in lam.colours) for phi in gf2.enumerate_gl(lam.rank))


def test_orientability_matches_odd_weight_oracle():
    P = build_polygon(6)
    count = 0
    for cols in itertools.product([E1, E2, E3, E1 ^ E2, E123], repeat=6):
        try:
            lam = Colouring(P, 3, cols)
        except ColouringError:
            continue
        if not is_proper(lam):
            continue
        count += 1
        assert is_orientable_colouring(lam) == _orientable_by_equivalence(lam)
        if count > 150:
            break
    assert count > 50


def test_equivalence_examples():
    lam = family_colouring("am", 3)
    g, phi = are_equivalent(lam, lam)
    assert phi(E1) in (E1, E2)
    shifted = polygon_cyclic(8, (E2, E1), 2)
    w = are_equivalent(lam, shifted)
    assert w is not None
    g, phi = w
    n = lam.polytope.n_facets
    assert all(phi(lam.colours[g(i)]) == shifted.colours[i] for i in range(n))
    other = polygon_cyclic(8, (E1, E2, E1, E2, E1, E1 ^ E2, E1, E2), 2)
    assert is_proper(other)
    assert are_equivalent(lam, other) is None
    assert are_equivalent_bruteforce(lam, other) is None


def test_equivalence_matches_bruteforce():
    P = build_polygon(6)
    base = family_colouring("am", 2)
    cols = [E1, E2, E1 ^ E2]
    for c in itertools.product(cols, repeat=6):
        lam = Colouring(P, 2, c) if gf2.rank(c) == 2 else None
        if lam is None or not is_proper(lam):
            continue
        a, b = are_equivalent(base, lam), are_equivalent_bruteforce(base, lam)
        assert (a is None) == (b is None)
        if a is not None:
            assert is_orientable_colouring(lam) == is_orientable_colouring(base)


@pytest.mark.parametrize("family,g,target", [
    ("loebell-am", 2, "am"), ("loebell-am", 5, "am"), ("loebell-wiman", 2, "wiman"),
    ("loebell-wiman", 3, "wiman"), ("loebell-kulkarni", 3, "kulkarni"), ("loebell-kulkarni", 7, "kulkarni"),
])
def test_induced_colouring_on_top_face(family, g, target):
    L = family_colouring(family, g)
    mu = induced_colouring(L, "T")
    assert is_proper(mu)
    assert mu.rank == L.rank - 1
    assert are_equivalent(mu, family_colouring(target, g)) is not None


def test_induced_colouring_needs_3d():
    with pytest.raises(Exception):
        induced_colouring(family_colouring("am", 2), 1)


def test_pushforward():
    g = 7
    k = family_colouring("kulkarni", g)
    p = BitMatrix.from_images([E1, E2, E1], 2)
    assert pushforward(k, p) == family_colouring("am", g)
    am = family_colouring("am", g)
    assert pushforward(am, BitMatrix.identity(2)) == am
    collapse = BitMatrix.from_images([E1, E1], 1)
    assert not is_proper(pushforward(am, collapse))
    with pytest.raises(ColouringError):
        pushforward(am, BitMatrix.from_images([E1, E1], 2))


def test_json_round_trip():
    L = family_colouring("loebell-kulkarni", 3)
    assert Colouring.from_json(L.polytope, L.to_json()) == L
    data = L.to_json()
    data["colours"]["T"] = [1, 0]
    with pytest.raises(ColouringError):
        Colouring.from_json(L.polytope, data)
