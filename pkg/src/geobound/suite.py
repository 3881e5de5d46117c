"""Per-genus verification of the three surface families.

``verify(family, g)`` runs every check for one genus and returns a report
dict (schema 1).  Checks are independent: an exception inside one check is
recorded as a failure of that check with the error message as witness.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from functools import cached_property
from typing import Callable, Iterable

from . import gf2
from .colouring import (E1, E2, E3, Colouring, are_equivalent, family_colouring,
                        induced_colouring, is_orientable_colouring, is_proper, pushforward)
from .complex import (CellComplex, CellMap, analyze, isomorphic, quotient, realize)
from .gf2 import BitMatrix
from .groups import (am_presentation, certify_presentation, find_presentation_images,
                     kulkarni_presentation, orbifold_signature)
from .isometry import (ColouredIsometry, IsometryGroup, act_label, has_fixed_point,
                       loebell_half_turn, make_isometry, orientation_sign, polygon_reflections,
                       search_involutions)
from .pairings import glue, theorem_e_table
from .polytope import Symmetry

SCHEMA = 1
FAMILIES = ("am", "wiman", "kulkarni")

# the statement that these groups are the full conformal groups rests on
# maximality results for the triangle groups involved; it is not recomputed
ASSUMPTIONS = {
    "am": ["the full orientation-preserving isometry group of the surface equals the coloured one "
           "(maximality of the (2,4,2g+2) triangle group, cited)"],
    "wiman": ["the quotient surface is identified by its automorphism group of order 8g "
              "(maximality of the (2,4g,4g) triangle group, cited)"],
    "kulkarni": ["the quotient surface is identified by its automorphism group of order 8g+8 "
                 "(maximality of the (2,4,2g+2) triangle group, cited)"],
}

KULKARNI_PHI_R1 = ((1, 1, 0), (0, 1, 0), (0, 1, 1))
KULKARNI_PHI_R2 = ((0, 1, 1), (1, 0, 1), (0, 0, 1))


class _Recorder:
    def __init__(self, timings: bool):
        self.timings = timings
        self.checks: list[dict] = []

    def check(self, name: str, claim: str, anchor: str, fn: Callable[[], tuple[bool, object]]) -> bool:
        start = time.perf_counter()
        try:
            ok, witness = fn()
            ok = bool(ok)
        except Exception as exc:  # a crashing check is a failing check
            ok, witness = False, f"{type(exc).__name__}: {exc}"
        entry = {"name": name, "claim": claim, "anchor": anchor,
                 "result": "pass" if ok else "fail", "witness": witness}
        if self.timings:
            entry["wall_time"] = round(time.perf_counter() - start, 4)
        self.checks.append(entry)
        return ok


def _eq(got, want) -> tuple[bool, dict]:
    return got == want, {"got": got, "expected": want}


def component_over_facet(C: CellComplex, lam: Colouring, facet) -> tuple[list, CellComplex]:
    """Cells of ``C`` lying over ``facet``, split into connected components.

    Returns the components (as lists of labels) and the subcomplex
    containing the cell ``(facet, 0)``.
    """
    i = lam.polytope.index(facet)
    cells = [(d, k) for d, labs in enumerate(C.labels) for k, (f, _) in enumerate(labs) if i in f]
    sub = C.subcomplex(cells)
    comps = [[sub.labels[d][k] for d, k in comp] for comp in sub.component_cells()]
    base = (frozenset([i]), 0)
    mine = next(c for c in comps if base in c)
    keep = [(C.dim - len(f), C.index[C.dim - len(f)][(f, v)]) for f, v in mine]
    return comps, C.subcomplex(keep)


def restricted_map(sub: CellComplex, lam: Colouring, x: ColouredIsometry) -> CellMap:
    return CellMap.from_label_map(sub, lambda d, lab: act_label(lam, x, lab))


def _signature_dict(sig) -> dict:
    return {"genus": sig.genus, "cone_orders": list(sig.cone_orders)}


class _Context:
    """Objects shared by the checks of one family and genus, built on demand."""

    def __init__(self, family: str, g: int):
        self.family = family
        self.g = g

    @cached_property
    def lam(self) -> Colouring:
        return family_colouring(self.family, self.g)

    @cached_property
    def G(self) -> IsometryGroup:
        return IsometryGroup(self.lam)

    @cached_property
    def C(self) -> CellComplex:
        return self.G.complex

    @cached_property
    def analysis(self):
        return self.G.analysis

    @cached_property
    def H(self):
        return self.G.rotation_subgroup()

    @cached_property
    def refl(self) -> tuple[Symmetry, Symmetry]:
        return polygon_reflections(self.lam.polytope)

    def el(self, s: Symmetry, v: int) -> ColouredIsometry:
        return self.G.element(s, v)

    def rot(self, k: int) -> Symmetry:
        r1, r2 = self.refl
        return (r1 * r2) ** k

    @cached_property
    def loebell(self) -> Colouring:
        return family_colouring(f"loebell-{self.family}", self.g)

    @cached_property
    def loebell_complex(self) -> CellComplex:
        return realize(self.loebell)


def _is_involution(G, x) -> bool:
    return x != G.identity and G.mul(x, x) == G.identity


def _surface_checks(rec: _Recorder, ctx: _Context, genus: int, anchor: str) -> None:
    rec.check("colouring-proper", "the colouring is proper", anchor,
              lambda: (is_proper(ctx.lam), None))
    rec.check("colouring-orientable", "the colouring is orientable", anchor,
              lambda: (is_orientable_colouring(ctx.lam), None))

    def surface():
        a = ctx.analysis
        ok = a.closed and a.orientable and a.components == 1 and a.genus == genus
        return ok, a.summary()
    rec.check("surface-genus", f"the manifold is a closed connected orientable surface of genus {genus}",
              anchor, surface)


def _embedding_checks(rec: _Recorder, ctx: _Context, half_turn_vec: int | None = None,
                      target: CellComplex | None = None, target_name: str = "",
                      anchor: str = "Löbell embedding") -> None:
    """The Löbell 3-manifold, the surface inside it and the half-turn isometry."""
    L = ctx.loebell

    def manifold():
        a = analyze(ctx.loebell_complex)
        ok = is_proper(L) and a.euler == 0 and a.orientable and a.components == 1 and a.closed
        return ok, a.summary()
    rec.check("loebell-manifold", "the Löbell colouring gives a closed connected orientable 3-manifold",
              anchor, manifold)

    def induced():
        mu = induced_colouring(L, "T")
        w = are_equivalent(mu, ctx.lam)
        return w is not None, {"rank": mu.rank, "colours": mu.describe()}
    rec.check("induced-colouring", "the colouring induced on the face T is equivalent to the surface colouring",
              anchor, induced)

    def components():
        s = induced_colouring(L, "T").rank
        comps, sub = component_over_facet(ctx.loebell_complex, L, "T")
        want = 2 ** (L.rank - s - 1)
        iso = isomorphic(sub, ctx.C) is not None
        return len(comps) == want == 1 and iso, {"components": len(comps), "formula": want,
                                                 "isomorphic_to_surface": iso}
    rec.check("embedding-components", "the preimage of T has 2^(k-s-1) = 1 component, "
              "a copy of the surface", anchor, components)
    if half_turn_vec is None:
        return

    def half_turn():
        r = loebell_half_turn(L.polytope)
        S = make_isometry(L, r, half_turn_vec)
        square = make_isometry(L, r * r, S.phi(S.vec) ^ S.vec)
        inv = square.sym.is_identity and square.vec == 0 and not S.sym.is_identity
        fpf = not has_fixed_point(L, S)
        pres = orientation_sign(L, S) == 1
        _, sub = component_over_facet(ctx.loebell_complex, L, "T")
        f = restricted_map(sub, L, S)
        q = quotient(sub, [f])
        qa = analyze(q)
        iso = target is not None and isomorphic(q, target) is not None
        ok = inv and fpf and pres and qa.genus == ctx.g and iso
        return ok, {"involution": inv, "fixed_point_free": fpf, "orientation_preserving": pres,
                    "surface_quotient_genus": qa.genus, f"isomorphic_to_{target_name}": iso,
                    "vec": gf2.format_vector(half_turn_vec, L.rank)}
    rec.check("half-turn", "the half-turn isometry is a fixed-point-free orientation-preserving involution "
              f"whose restriction to the embedded surface is the quotient map onto {target_name}",
              anchor, half_turn)


def _pairing_check(rec: _Recorder, ctx: _Context, target: Callable[[], CellComplex]) -> None:
    def run():
        glued = glue(theorem_e_table(ctx.family, ctx.g))
        a = analyze(glued)
        iso = isomorphic(glued, target()) is not None
        return a.genus == ctx.g and iso, {"genus": a.genus, "isomorphic": iso,
                                          "counts": list(glued.counts())}
    rec.check("side-pairing", "the side-pairing surface has genus g and is isomorphic to the colouring surface",
              "side-pairing characterization", run)


# -- families -------------------------------------------------------------------------


def _verify_am(rec: _Recorder, ctx: _Context) -> None:
    g = ctx.g
    _surface_checks(rec, ctx, g, "polygon colouring surfaces")
    G = ctx.G
    r1, r2 = ctx.refl
    rec.check("admissible", "every symmetry of the polygon is admissible", "coloured isometry group",
              lambda: _eq(len({x.sym for x in G.elements}), 4 * g + 4))
    rec.check("isometry-order", "the coloured isometry group has order 16g+16", "coloured isometry group",
              lambda: _eq(len(G), 16 * g + 16))

    def phis():
        p1, p2 = G.element(r1, 0).phi, G.element(r2, 0).phi
        ok = p1 == BitMatrix.identity(2) and p2 == BitMatrix.from_images([E2, E1], 2)
        return ok, {"r1": p1.rows(), "r2": p2.rows()}
    rec.check("colour-actions", "r1 acts trivially on colours and r2 swaps e1, e2",
              "coloured isometry group", phis)
    x, y = G.element(r1, E1), G.element(r2, E1)

    def products():
        xy, yy = G.mul(x, y), G.mul(y, y)
        ok = xy == G.element(r1 * r2, 0) and yy == G.element(r2 * r2, E1 ^ E2)
        return ok, {"xy": G.describe(xy), "yy": G.describe(yy)}
    rec.check("products", "(r1,e1)(r2,e1) = (r1r2,0) and (r2,e1)^2 = (id,e1+e2)",
              "semidirect product convention", products)
    a, b = G.mul(x, y), y

    def presentation():
        cert = certify_presentation(ctx.H, [a, b], am_presentation(g))
        return bool(cert) and cert.presented_order == 8 * g + 8, cert.to_json()
    rec.check("am-presentation", "the orientation-preserving coloured isometries form AM_g of order 8g+8",
              "Accola-Maclachlan presentation", presentation)

    def signature():
        sig = orbifold_signature(ctx.C, [G.cell_map(a), G.cell_map(b)], ctx.analysis.orientation)
        return sig.genus == 0 and sig.cone_orders == tuple(sorted((2, 4, 2 * g + 2))), _signature_dict(sig)
    rec.check("signature", "the quotient by the orientation-preserving group has signature (0;2,4,2g+2)",
              "Accola-Maclachlan signature", signature)

    def involution():
        t = G.element(r1, E1 ^ E2)
        ok = _is_involution(G, t) and not G.has_fixed_point(t) and G.orientation_sign(t) == -1
        return ok, G.describe(t)
    rec.check("bounding-involution", "(r1,e1+e2) is a fixed-point-free orientation-reversing involution",
              "geometric bounding", involution)
    _pairing_check(rec, ctx, lambda: ctx.C)
    _embedding_checks(rec, ctx)


def _verify_wiman(rec: _Recorder, ctx: _Context) -> None:
    g = ctx.g
    _surface_checks(rec, ctx, 2 * g - 1, "polygon colouring surfaces")
    G = ctx.G
    r1, r2 = ctx.refl
    rec.check("isometry-order", "the coloured isometry group has order 32g", "coloured isometry group",
              lambda: _eq(len(G), 32 * g))
    a, b = G.element(r1 * r2, 0), G.element(r2, E1)
    c = G.mul(G.power(a, 2 * g), G.mul(b, b))

    def c_element():
        ok = c == G.element(ctx.rot(2 * g), E1 ^ E2) and _is_involution(G, c)
        ok = ok and not G.has_fixed_point(c) and G.orientation_sign(c) == 1
        return ok, G.describe(c)
    rec.check("c-fixed-point-free", "c_g = a^(2g) b^2 is a fixed-point-free orientation-preserving involution",
              "Wiman quotient", c_element)
    cmap = G.cell_map(c)

    @_cached
    def Q() -> CellComplex:
        return quotient(ctx.C, [cmap])

    def genus():
        qa = analyze(Q())
        return qa.genus == g, qa.summary()
    rec.check("quotient-genus", "the quotient by c_g has genus g", "Wiman quotient", genus)
    rec.check("normalizer", "the normalizer of <c_g> is the whole orientation-preserving group",
              "Wiman quotient", lambda: _eq(len(ctx.H.normalizer([c])), len(ctx.H)))

    def signature():
        b2 = G.mul(b, b)
        sig = orbifold_signature(ctx.C, [G.cell_map(a), G.cell_map(b2)], ctx.analysis.orientation)
        return sig.genus == 0 and sig.cone_orders == (2, 4 * g, 4 * g), _signature_dict(sig)
    rec.check("signature", "the quotient by <a, b^2> has signature (0;2,4g,4g)", "Wiman signature", signature)

    def involutions():
        found = search_involutions(G, -1, c)
        ok = bool(found) == (g % 2 == 1)
        return ok, {"count": len(found), "first": G.describe(found[0]) if found else None,
                    "expected_nonempty": g % 2 == 1}
    rec.check("bounding-involution", "an orientation-reversing fixed-point-free involution exists modulo c_g "
              "exactly when g is odd", "geometric bounding", involutions)
    _pairing_check(rec, ctx, Q)
    _embedding_checks(rec, ctx, E2 ^ E3, Q(), "the quotient by c_g")


def _verify_kulkarni(rec: _Recorder, ctx: _Context) -> None:
    g = ctx.g
    _surface_checks(rec, ctx, 2 * g - 1, "polygon colouring surfaces")
    G = ctx.G
    r1, r2 = ctx.refl

    def phis():
        p1, p2 = G.element(r1, 0).phi, G.element(r2, 0).phi
        ok = p1 == BitMatrix.from_rows(KULKARNI_PHI_R1) and p2 == BitMatrix.from_rows(KULKARNI_PHI_R2)
        return ok, {"r1": p1.rows(), "r2": p2.rows()}
    rec.check("colour-actions", "the colour actions of r1, r2 equal the reference matrices",
              "Kulkarni colour actions", phis)
    rec.check("admissible", "every symmetry of the polygon is admissible", "coloured isometry group",
              lambda: _eq(len({x.sym for x in G.elements}), 4 * g + 4))
    rec.check("euler", "the surface has Euler characteristic 4-4g", "Kulkarni surface",
              lambda: _eq(ctx.analysis.euler, 4 - 4 * g))
    x, z = G.element(r1, E1), G.element(r2, E1)
    a, b = G.mul(x, z), G.power(z, 3)
    d = G.element(ctx.rot(g + 1), E1 ^ E3)

    def d_element():
        ok = _is_involution(G, d) and not G.has_fixed_point(d) and G.orientation_sign(d) == 1
        central = all(G.commutes(d, y) for y in G.elements)
        return ok and central, {"element": G.describe(d), "central": central}
    rec.check("d-fixed-point-free", "d_g is a central fixed-point-free orientation-preserving involution",
              "Kulkarni quotient", d_element)

    def relation():
        b2 = G.mul(b, b)
        lhs = G.mul(G.mul(b2, a), b2)
        rhs = G.mul(G.power(a, g + 2), d)
        return lhs == rhs, {"lhs": G.describe(lhs), "rhs": G.describe(rhs)}
    rec.check("relation", "b^2 a b^2 = a^(g+2) d_g", "Kulkarni presentation", relation)

    def presentation():
        N = ctx.H.normalizer([d])
        Qg = N.quotient(N.subgroup([d]))
        canon = Qg.canonical  # type: ignore[attr-defined]
        cert = certify_presentation(Qg, [canon[a], canon[b]], kulkarni_presentation(g))
        out = cert.to_json()
        out["normalizer_order"] = len(N)
        return bool(cert) and cert.presented_order == 8 * g + 8, out
    rec.check("k-presentation", "N(d_g)/<d_g> is the Kulkarni group K_g of order 8g+8",
              "Kulkarni presentation", presentation)
    dmap = G.cell_map(d)

    @_cached
    def Q() -> CellComplex:
        return quotient(ctx.C, [dmap])

    def genus():
        qa = analyze(Q())
        return qa.genus == g, qa.summary()
    rec.check("quotient-genus", "the quotient by d_g has genus g", "Kulkarni quotient", genus)

    def signature():
        sig = orbifold_signature(ctx.C, [G.cell_map(x), G.cell_map(z)], ctx.analysis.orientation)
        return sig.genus == 0 and sig.cone_orders == tuple(sorted((2, 4, 2 * g + 2))), _signature_dict(sig)
    rec.check("signature", "the quotient by the orientation-preserving group has signature (0;2,4,2g+2)",
              "Kulkarni signature", signature)

    def involutions():
        found = search_involutions(G, -1, d)
        want = g % 8 == 3
        return bool(found) == want, {"count": len(found), "first": G.describe(found[0]) if found else None,
                                     "expected_nonempty": want}
    rec.check("bounding-involution", "an orientation-reversing fixed-point-free involution exists modulo d_g "
              "exactly when g = 3 mod 8", "geometric bounding", involutions)

    def double_cover():
        e = G.element(Symmetry.identity(ctx.lam.polytope.n_facets), E1 ^ E3)
        fpf = not G.has_fixed_point(e)
        p = BitMatrix.from_images([E1, E2, E1], 2)
        push = pushforward(ctx.lam, p) == family_colouring("am", g)
        iso = isomorphic(quotient(ctx.C, [G.cell_map(e)]), realize(family_colouring("am", g)))
        return fpf and push and iso is not None, {"fixed_point_free": fpf, "pushforward_is_am": push,
                                                 "isomorphic": iso is not None}
    rec.check("double-cover", "the quotient by e = (id, e1+e3) is the Accola-Maclachlan colouring surface",
              "common double cover", double_cover)
    if g > 3:
        rec.check("mutual-exclusion", "no group instance satisfies both the AM_g and K_g presentations",
                  "AM_g and K_g are distinct", lambda: mutual_exclusion(g))
    _pairing_check(rec, ctx, Q)
    _embedding_checks(rec, ctx, E1 ^ E3, Q(), "the quotient by d_g")


def group_instances(g: int) -> dict:
    """The two concrete groups of order 8g+8: AM from the alternating colouring, K from the cyclic one."""
    am = IsometryGroup(family_colouring("am", g)).rotation_subgroup()
    G = IsometryGroup(family_colouring("kulkarni", g))
    r1, r2 = polygon_reflections(G.polytope)
    d = G.element((r1 * r2) ** (g + 1), E1 ^ E3)
    H = G.rotation_subgroup()
    N = H.normalizer([d])
    return {"am": am, "kulkarni": N.quotient(N.subgroup([d]))}


def mutual_exclusion(g: int) -> tuple[bool, dict]:
    found = {}
    for name, inst in group_instances(g).items():
        found[name] = {"am": find_presentation_images(inst, am_presentation(g)) is not None,
                       "kulkarni": find_presentation_images(inst, kulkarni_presentation(g)) is not None}
    ok = all(not (v["am"] and v["kulkarni"]) for v in found.values())
    ok = ok and found["am"]["am"] and found["kulkarni"]["kulkarni"]
    return ok, found


def _cached(fn):
    box: list = []

    def wrapper():
        if not box:
            box.append(fn())
        return box[0]
    return wrapper


_RUNNERS = {"am": _verify_am, "wiman": _verify_wiman, "kulkarni": _verify_kulkarni}


def verify(family: str, g: int, timings: bool = False) -> dict:
    if family not in _RUNNERS:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    family_colouring(family, g)  # validates the genus
    rec = _Recorder(timings)
    start = time.perf_counter()
    _RUNNERS[family](rec, _Context(family, g))
    report = {"schema": SCHEMA, "family": family, "genus": g,
              "status": "pass" if all(c["result"] == "pass" for c in rec.checks) else "fail",
              "checks": rec.checks, "assumptions": ASSUMPTIONS[family]}
    if timings:
        report["wall_time"] = round(time.perf_counter() - start, 4)
    return report


def _verify_args(args: tuple[str, int, bool]) -> dict:
    return verify(*args)


def verify_many(family: str, genera: Iterable[int], jobs: int = 1, timings: bool = False) -> list[dict]:
    """Reports in the order of ``genera``; ``jobs > 1`` spreads genera over processes."""
    tasks = [(family, g, timings) for g in genera]
    if jobs <= 1 or len(tasks) <= 1:
        return [_verify_args(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(_verify_args, tasks))


def default_jobs(requested: int | None) -> int:
    env = os.environ.get("GEOBOUND_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"GEOBOUND_JOBS must be an integer, got {env!r}") from None
    return max(1, requested or 1)


def named_element(G: IsometryGroup, family: str, g: int, name: str) -> ColouredIsometry:
    """``c`` (Wiman: a^(2g) b^2) or ``d`` (Kulkarni: d_g) in the group of the family colouring."""
    r1, r2 = polygon_reflections(G.polytope)
    if name == "c" and family == "wiman":
        return G.element((r1 * r2) ** (2 * g), E1 ^ E2)
    if name == "d" and family == "kulkarni":
        return G.element((r1 * r2) ** (g + 1), E1 ^ E3)
    raise ValueError(f"element {name!r} is not defined for family {family!r}")
