"""Acceptance criteria, run exactly (no tolerances).

Each criterion prints one PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run standalone with ``python3 tests/test_acceptance.py``.
"""

import subprocess
import sys
import time

import pytest

from geobound.colouring import (E1, E2, E3, are_equivalent, family_colouring, induced_colouring)
from geobound.complex import analyze, isomorphic, quotient, realize
from geobound.gf2 import BitMatrix
from geobound.groups import (Signature, am_presentation, certify_presentation, kulkarni_presentation,
                             orbifold_signature)
from geobound.isometry import IsometryGroup, polygon_reflections, search_involutions
from geobound.pairings import glue, theorem_e_table
from geobound.polytope import Symmetry
from geobound.suite import component_over_facet, mutual_exclusion

RESULTS: list[tuple[int, bool, str]] = []


def record(n: int, title: str, failures: list, extra: str = "") -> bool:
    ok = not failures
    detail = extra if ok else "; ".join(map(str, failures[:5]))
    RESULTS.append((n, ok, f"{title}: {detail}".rstrip(": ")))
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {title} {detail}".rstrip())
    return ok


def criterion_1() -> bool:
    failures = []
    slowest = 0.0
    for g in range(2, 26):
        start = time.perf_counter()
        G = IsometryGroup(family_colouring("am", g))
        a_ = G.analysis
        if not (a_.components == 1 and a_.orientable and a_.closed and a_.genus == g):
            failures.append(f"g={g} surface {a_.summary()}")
        if len(G) != 16 * g + 16:
            failures.append(f"g={g} |Isom_c|={len(G)}")
        r1, r2 = polygon_reflections(G.polytope)
        x, y = G.element(r1, E1), G.element(r2, E1)
        a, b = G.mul(x, y), y
        H = G.rotation_subgroup()
        cert = certify_presentation(H, [a, b], am_presentation(g))
        if not cert or cert.presented_order != 8 * g + 8:
            failures.append(f"g={g} certificate {cert}")
        sig = orbifold_signature(G.complex, [G.cell_map(a), G.cell_map(b)], a_.orientation)
        if sig != Signature(0, tuple(sorted((2, 4, 2 * g + 2)))):
            failures.append(f"g={g} signature {sig}")
        t = G.element(r1, E1 ^ E2)
        if not (G.mul(t, t) == G.identity and not G.has_fixed_point(t) and G.orientation_sign(t) == -1):
            failures.append(f"g={g} (r1,e1+e2)")
        slowest = max(slowest, time.perf_counter() - start)
    if slowest >= 2:
        failures.append(f"slowest genus took {slowest:.2f}s")
    return record(1, "AM family g=2..25", failures, f"slowest genus {slowest:.2f}s")


def criterion_2() -> bool:
    failures = []
    for g in range(2, 16):
        L = family_colouring("loebell-am", g)
        C = realize(L)
        a = analyze(C)
        if not (a.euler == 0 and a.orientable and a.components == 1):
            failures.append(f"g={g} {a.summary()}")
        mu = induced_colouring(L, "T")
        if L.polytope.face_dim(frozenset([L.polytope.index("T")])) != 2 or mu.polytope.n_facets != 2 * g + 2:
            failures.append(f"g={g} T is not a (2g+2)-gon")
        if are_equivalent(mu, family_colouring("am", g)) is None:
            failures.append(f"g={g} induced colouring not equivalent")
        comps, _ = component_over_facet(C, L, "T")
        if not len(comps) == 2 ** (L.rank - mu.rank - 1) == 1:
            failures.append(f"g={g} {len(comps)} components")
    return record(2, "Löbell embeddings g=2..15", failures)


def criterion_3() -> bool:
    failures = []
    for g in range(2, 26):
        G = IsometryGroup(family_colouring("wiman", g))
        r1, r2 = polygon_reflections(G.polytope)
        a, b = G.element(r1 * r2, 0), G.element(r2, E1)
        c = G.mul(G.power(a, 2 * g), G.mul(b, b))
        if G.has_fixed_point(c):
            failures.append(f"g={g} c_g has a fixed point")
        q = analyze(quotient(G.complex, [G.cell_map(c)]))
        if q.genus != g:
            failures.append(f"g={g} quotient genus {q.genus}")
        H = G.rotation_subgroup()
        if len(H.normalizer([c])) != len(H):
            failures.append(f"g={g} normalizer")
        sig = orbifold_signature(G.complex, [G.cell_map(a), G.cell_map(G.mul(b, b))], G.analysis.orientation)
        if sig != Signature(0, (2, 4 * g, 4 * g)):
            failures.append(f"g={g} signature {sig}")
        if bool(search_involutions(G, -1, c)) != (g % 2 == 1):
            failures.append(f"g={g} involution search")
    return record(3, "Wiman family g=2..25", failures)


def criterion_4() -> bool:
    failures = []
    expected_r1 = BitMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 1, 1]])
    expected_r2 = BitMatrix.from_rows([[0, 1, 1], [1, 0, 1], [0, 0, 1]])
    for g in (3, 7, 11, 15, 19, 23):
        G = IsometryGroup(family_colouring("kulkarni", g))
        r1, r2 = polygon_reflections(G.polytope)
        if G.element(r1, 0).phi != expected_r1 or G.element(r2, 0).phi != expected_r2:
            failures.append(f"g={g} colour actions")
        if G.complex.euler() != 4 - 4 * g:
            failures.append(f"g={g} euler {G.complex.euler()}")
        d = G.element((r1 * r2) ** (g + 1), E1 ^ E3)
        if G.has_fixed_point(d):
            failures.append(f"g={g} d_g has a fixed point")
        x, z = G.element(r1, E1), G.element(r2, E1)
        a, b = G.mul(x, z), G.power(z, 3)
        b2 = G.mul(b, b)
        if G.mul(G.mul(b2, a), b2) != G.mul(G.power(a, g + 2), d):
            failures.append(f"g={g} relation")
        N = G.rotation_subgroup().normalizer([d])
        Q = N.quotient(N.subgroup([d]))
        cert = certify_presentation(Q, [Q.canonical[a], Q.canonical[b]], kulkarni_presentation(g))
        if not cert or cert.presented_order != 8 * g + 8:
            failures.append(f"g={g} K_g certificate {cert}")
        if analyze(quotient(G.complex, [G.cell_map(d)])).genus != g:
            failures.append(f"g={g} quotient genus")
        if bool(search_involutions(G, -1, d)) != (g % 8 == 3):
            failures.append(f"g={g} involution search")
        e = G.element(Symmetry.identity(G.polytope.n_facets), E1 ^ E3)
        if isomorphic(quotient(G.complex, [G.cell_map(e)]), realize(family_colouring("am", g))) is None:
            failures.append(f"g={g} double cover")
    return record(4, "Kulkarni family g=3,7,..,23", failures)


def _pairing_target(family, g):
    if family == "am":
        return realize(family_colouring("am", g))
    G = IsometryGroup(family_colouring(family, g))
    r1, r2 = polygon_reflections(G.polytope)
    if family == "wiman":
        z = G.element((r1 * r2) ** (2 * g), E1 ^ E2)
    else:
        z = G.element((r1 * r2) ** (g + 1), E1 ^ E3)
    return quotient(G.complex, [G.cell_map(z)])


def criterion_5() -> bool:
    failures = []
    count = 0
    for family in ("am", "wiman", "kulkarni"):
        for g in range(2, 16):
            if family == "kulkarni" and g % 4 != 3:
                continue
            count += 1
            C = glue(theorem_e_table(family, g))
            if analyze(C).genus != g:
                failures.append(f"{family} g={g} genus {analyze(C).genus}")
            if isomorphic(C, _pairing_target(family, g)) is None:
                failures.append(f"{family} g={g} not isomorphic")
    return record(5, "side-pairing surfaces g=2..15", failures, f"{count} tables")


def criterion_6() -> bool:
    failures = []
    for g in (7, 11, 15, 19, 23):
        ok, found = mutual_exclusion(g)
        if not ok:
            failures.append(f"g={g} {found}")
    return record(6, "AM_g and K_g never both certified, g=7..23", failures)


def criterion_7() -> bool:
    failures = []
    total = 0
    start = time.perf_counter()
    cases = [("am", g) for g in range(2, 6)] + [("wiman", g) for g in range(2, 6)] + [("kulkarni", 3)]
    cases += [("loebell-am", g) for g in range(2, 6)] + [("loebell-wiman", 2), ("loebell-kulkarni", 3)]
    for family, g in cases:
        G = IsometryGroup(family_colouring(family, g))
        for x in G.elements:
            total += 1
            if G.has_fixed_point(x) != G.has_fixed_point_bruteforce(x):
                failures.append(f"{family} g={g} {G.describe(x)}")
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        failures.append(f"took {elapsed:.1f}s")
    return record(7, "fixed-point test equals brute force", failures, f"{total} elements in {elapsed:.1f}s")


def criterion_8() -> bool:
    cmd = [sys.executable, "-m", "geobound", "verify", "--family", "am", "--genus", "2..10"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    failures = []
    if first.returncode != 0 or second.returncode != 0:
        failures.append(f"exit codes {first.returncode}, {second.returncode}")
    if first.stdout != second.stdout:
        failures.append("reports differ")
    if len(first.stdout.splitlines()) != 9:
        failures.append(f"{len(first.stdout.splitlines())} reports")
    return record(8, "verify am 2..10 is byte-identical across runs", failures,
                  f"{len(first.stdout)} bytes")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
