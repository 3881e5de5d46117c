import pytest

from geobound.colouring import family_colouring
from geobound.complex import analyze, fundamental_cycle_ok, isomorphic, realize
from geobound.pairings import PairingError, PairingTable, glue, square_torus, theorem_e_table


def test_am_table_examples():
    T = theorem_e_table("am", 2)
    assert T.m == 6 and len(T.copies) == 4
    assert T.pairs[(1, (0, 0))] == (1, (1, 0))
    assert T.pairs[(2, (0, 0))] == (2, (0, 1))


def test_wiman_table_example():
    g = 2
    T = theorem_e_table("wiman", g)
    assert T.m == 8 and T.copies == ((0,), (1,))
    assert T.pairs[(2, (0,))] == (2 * g + 2, (1,))
    assert T.pairs[(1, (0,))] == (1, (1,))


def test_kulkarni_table_example():
    g = 3
    T = theorem_e_table("kulkarni", g)
    assert T.pairs[(3, (0, 0))] == (g + 1 + 3, (1, 0))
    assert T.pairs[(4, (0, 0))] == ((g + 1 + 4 - 1) % 8 + 1, (0, 1))
    with pytest.raises(ValueError):
        theorem_e_table("kulkarni", 5)
    with pytest.raises(PairingError):
        theorem_e_table("loebell-am", 3)


def test_torus():
    C = glue(square_torus())
    a = analyze(C)
    assert C.counts() == (1, 2, 1)
    assert a.euler == 0 and a.orientable and a.genus == 1


@pytest.mark.parametrize("family,g", [("am", 2), ("am", 5), ("wiman", 2), ("wiman", 4), ("kulkarni", 3)])
def test_glued_surfaces(family, g):
    T = theorem_e_table(family, g)
    C = glue(T)
    a = analyze(C)
    assert a.closed and a.orientable and a.genus == g
    assert C.counts()[1] == len(T.copies) * T.m // 2
    assert fundamental_cycle_ok(C, [T.signs[c] for c in T.copies])


def test_am_glue_matches_colouring_surface():
    for g in (2, 3, 4):
        assert isomorphic(glue(theorem_e_table("am", g)), realize(family_colouring("am", g))) is not None


def test_opposite_corner_rule_gives_wrong_genus():
    # reversing the identification between copies of opposite sign breaks the AM surface
    T = theorem_e_table("am", 3)
    flipped = PairingTable(T.m, T.copies, T.pairs, {c: 1 for c in T.copies})
    a = analyze(glue(flipped))
    assert a.genus != 3


def test_invalid_tables():
    with pytest.raises(PairingError):
        PairingTable(4, ((),), {(1, ()): (1, ()), (2, ()): (4, ()), (3, ()): (3, ()), (4, ()): (2, ())},
                     {(): 1})
    with pytest.raises(PairingError):
        PairingTable(4, ((),), {(1, ()): (3, ()), (3, ()): (1, ())}, {(): 1})
    with pytest.raises(PairingError):
        PairingTable(4, ((),), {(1, ()): (3, ()), (3, ()): (2, ()), (2, ()): (4, ()), (4, ()): (2, ())},
                     {(): 1})


def test_json_round_trip():
    T = theorem_e_table("kulkarni", 7)
    assert PairingTable.from_json(T.to_json()) == T
