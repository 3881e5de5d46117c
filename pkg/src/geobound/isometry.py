"""Coloured isometries ``(s, v)`` of the manifold of a colouring.

An admissible symmetry ``s`` permutes the colours through a linear map
``Phi(s)``, defined by ``Phi(s)(lam(F)) = lam(s(F))``.  The pairs form a
semidirect product with

    (s, u) * (t, w) = (s t, u + Phi(s) w),

acting on cells by ``(f, v) -> (s(f), Phi(s) v + u)``.  This is the
convention under which, on the alternating polygon colouring,
``(r1, e1) * (r2, e1) = (r1 r2, 0)`` and ``(r2, e1)^2 = (id, e1 + e2)``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Sequence

from . import gf2
from .colouring import (Colouring, ColouringError, is_orientable_colouring, is_proper,
                        orientability_functional)
from .complex import Analysis, CellComplex, CellMap, analyze, realize
from .gf2 import BitMatrix
from .groups import FiniteGroup
from .polytope import Polytope, PolytopeError, Symmetry


class IsometryError(ValueError):
    pass


@dataclass(frozen=True)
class ColouredIsometry:
    sym: Symmetry
    vec: int
    phi: BitMatrix = field(compare=False, repr=False)

    def to_json(self, lam: Colouring) -> dict:
        P = lam.polytope
        return {"perm": {str(P.facets[i]): P.facets[j] for i, j in enumerate(self.sym.perm)},
                "vec": gf2.to_bits(self.vec, lam.rank)}

    def describe(self, lam: Colouring) -> str:
        P = lam.polytope
        moved = [f"{P.facets[i]}->{P.facets[j]}" for i, j in enumerate(self.sym.perm) if i != j]
        s = "id" if not moved else "(" + " ".join(moved) + ")"
        return f"[{s}, {gf2.format_vector(self.vec, lam.rank)}]"


def colour_action(lam: Colouring, s: Symmetry) -> BitMatrix | None:
    """``Phi(s)``, or ``None`` when ``s`` does not permute colours linearly."""
    n = lam.polytope.n_facets
    try:
        phi = gf2.solve_linear_map([(lam.colours[i], lam.colours[s(i)]) for i in range(n)],
                                   lam.rank, lam.rank)
    except ValueError:
        return None
    if phi is None or not phi.is_invertible():
        return None
    return phi


def admissible_symmetries(lam: Colouring) -> list[tuple[Symmetry, BitMatrix]]:
    out = []
    for s in lam.polytope.automorphisms():
        phi = colour_action(lam, s)
        if phi is not None:
            out.append((s, phi))
    return out


def make_isometry(lam: Colouring, s: Symmetry, v: int) -> ColouredIsometry:
    gf2.check_vector(v, lam.rank)
    if not lam.polytope.is_automorphism(s):
        raise IsometryError("not a symmetry of the polytope")
    phi = colour_action(lam, s)
    if phi is None:
        raise IsometryError("symmetry is not admissible for this colouring")
    return ColouredIsometry(s, v, phi)


def compose(x: ColouredIsometry, y: ColouredIsometry) -> ColouredIsometry:
    return ColouredIsometry(x.sym * y.sym, x.vec ^ x.phi(y.vec), x.phi @ y.phi)


def invert(x: ColouredIsometry) -> ColouredIsometry:
    pinv = x.phi.inverse()
    return ColouredIsometry(x.sym.inverse(), pinv(x.vec), pinv)


def act_label(lam: Colouring, x: ColouredIsometry, label: tuple) -> tuple:
    """Image of the cell ``(face, coset rep)``."""
    f, v = label
    g = x.sym.image(f)
    return g, lam.isotropy(g).coset_rep(x.phi(v) ^ x.vec)


def has_fixed_point(lam: Colouring, x: ColouredIsometry) -> bool:
    """Whether ``x`` fixes a point of the manifold.

    A cell over ``f`` is mapped to itself iff ``s(f) = f`` and
    ``Phi(s) v + u`` lies in ``v + G_f`` for some ``v``, that is
    ``u in G_f + Im(Phi(s) + I)``; a cell mapped to itself fixes its
    barycenter.
    """
    moved = gf2.image_plus_identity(x.phi)
    for f in lam.polytope.invariant_faces(x.sym):
        if x.vec in lam.isotropy(f) + moved:
            return True
    return False


def has_fixed_point_bruteforce(lam: Colouring, C: CellComplex, x: ColouredIsometry) -> bool:
    return any(act_label(lam, x, lab) == lab for labs in C.labels for lab in labs)


def orientation_sign(lam: Colouring, x: ColouredIsometry) -> int:
    """+1 if ``x`` preserves orientation, else -1.

    The copy ``(P, v)`` carries the sign ``(-1)^(f . v)`` for the
    orientability functional ``f``; ``x`` sends ``(P, 0)`` to ``(P, u)``
    with the polytope's own orientation character of ``s``.
    """
    if not is_orientable_colouring(lam):
        raise IsometryError("orientation sign needs an orientable colouring")
    f = orientability_functional(lam)
    return lam.polytope.orientation_character(x.sym) * (-1) ** gf2.dot(f, x.vec)


class IsometryGroup(FiniteGroup[ColouredIsometry]):
    """All coloured isometries of the manifold of ``lam``."""

    def __init__(self, lam: Colouring):
        if not is_proper(lam):
            raise ColouringError("coloured isometries need a proper colouring")
        self.colouring = lam
        adm = admissible_symmetries(lam)
        elems = [ColouredIsometry(s, v, phi) for s, phi in adm for v in range(1 << lam.rank)]
        ident = ColouredIsometry(Symmetry.identity(lam.polytope.n_facets), 0,
                                 BitMatrix.identity(lam.rank))
        super().__init__(elems, compose, ident, invert)
        self._cell_maps: dict[ColouredIsometry, CellMap] = {}

    @property
    def polytope(self) -> Polytope:
        return self.colouring.polytope

    @cached_property
    def complex(self) -> CellComplex:
        return realize(self.colouring)

    @cached_property
    def analysis(self) -> Analysis:
        return analyze(self.complex)

    def element(self, s: Symmetry, v: int) -> ColouredIsometry:
        x = make_isometry(self.colouring, s, v)
        if x not in self.index:
            raise IsometryError("element not in the group")
        return x

    def act(self, x: ColouredIsometry, label: tuple) -> tuple:
        return act_label(self.colouring, x, label)

    def cell_map(self, x: ColouredIsometry) -> CellMap:
        if x not in self._cell_maps:
            self._cell_maps[x] = CellMap.from_label_map(self.complex, lambda d, lab: self.act(x, lab))
        return self._cell_maps[x]

    @cached_property
    def _functional(self) -> int:
        if not is_orientable_colouring(self.colouring):
            raise IsometryError("orientation sign needs an orientable colouring")
        return orientability_functional(self.colouring)

    @cached_property
    def _characters(self) -> dict[Symmetry, int]:
        P = self.polytope
        return {s: P.orientation_character(s) for s in {x.sym for x in self.elements}}

    def orientation_sign(self, x: ColouredIsometry) -> int:
        return self._characters[x.sym] * (-1) ** gf2.dot(self._functional, x.vec)

    def has_fixed_point(self, x: ColouredIsometry) -> bool:
        return has_fixed_point(self.colouring, x)

    def has_fixed_point_bruteforce(self, x: ColouredIsometry) -> bool:
        return has_fixed_point_bruteforce(self.colouring, self.complex, x)

    def rotation_subgroup(self) -> FiniteGroup[ColouredIsometry]:
        """The orientation-preserving coloured isometries."""
        keep = [x for x in self.elements if self.orientation_sign(x) == 1]
        return FiniteGroup(keep, compose, self.identity, invert)

    def describe(self, x: ColouredIsometry) -> str:
        return x.describe(self.colouring)


def search_involutions(G: IsometryGroup, want_orientation: int,
                       modulo: ColouredIsometry | None = None) -> list[ColouredIsometry]:
    """Elements inducing fixed-point-free involutions, optionally on the quotient by ``<z>``.

    Returns every ``x`` outside ``<z>`` with ``x^2`` in ``<z>``, the given
    orientation sign, and every non-identity element of ``<x, z>`` acting
    without fixed points.
    """
    if want_orientation not in (1, -1):
        raise IsometryError("orientation must be +1 or -1")
    one = G.identity
    zgroup = [one]
    if modulo is not None:
        z = modulo
        if z not in G.index:
            raise IsometryError("modulo element is not in the group")
        if z == one or G.mul(z, z) != one:
            raise IsometryError("modulo element must have order 2")
        if G.has_fixed_point(z):
            raise IsometryError("modulo element has fixed points")
        if any(not G.commutes(z, g) for g in G.elements):
            raise IsometryError("modulo element is not central")
        zgroup.append(z)
    out = []
    for x in G.elements:
        if x in zgroup or G.mul(x, x) not in zgroup:
            continue
        if G.orientation_sign(x) != want_orientation:
            continue
        sub = {G.mul(x, z) for z in zgroup} | set(zgroup)
        if all(not G.has_fixed_point(y) for y in sub if y != one):
            out.append(x)
    return out


# -- named symmetries ------------------------------------------------------------------


def polygon_reflections(P: Polytope) -> tuple[Symmetry, Symmetry]:
    """``r1`` fixes edge 1 and ``r2`` fixes the vertex shared by edges 1 and 2.

    Their product ``r1 r2`` rotates edge ``i`` to edge ``i - 1``.
    """
    if P.dim != 2:
        raise PolytopeError("polygon reflections need a polygon")
    m = P.n_facets
    r1 = P.symmetry({i: (2 - i - 1) % m + 1 for i in range(1, m + 1)})
    r2 = P.symmetry({i: (3 - i - 1) % m + 1 for i in range(1, m + 1)})
    return r1, r2


def loebell_half_turn(P: Polytope) -> Symmetry:
    """The half-turn about the axis through the centres of ``T`` and ``B``."""
    m = (P.n_facets - 2) // 2
    if P.dim != 3 or m % 2:
        raise PolytopeError("the half-turn needs R(m) with m even")
    mapping: dict[Hashable, Hashable] = {"T": "T", "B": "B"}
    for i in range(1, m + 1):
        j = (i - 1 + m // 2) % m + 1
        mapping[f"t{i}"] = f"t{j}"
        mapping[f"b{i}"] = f"b{j}"
    return P.symmetry(mapping)


def rotation_power(P: Polytope, k: int) -> Symmetry:
    r1, r2 = polygon_reflections(P)
    return (r1 * r2) ** k


def isometry_from_json(lam: Colouring, data: dict) -> ColouredIsometry:
    P = lam.polytope
    by_name = {str(f): f for f in P.facets}
    mapping = {by_name[str(k)]: by_name[str(v)] for k, v in data["perm"].items()}
    return make_isometry(lam, P.symmetry(mapping), gf2.from_bits(data["vec"]))


def group_fingerprint(G: FiniteGroup) -> str:
    """A hash of the Cayley table in element order, for regression checks."""
    h = hashlib.sha256()
    for row in G.cayley_table():
        h.update(",".join(map(str, row)).encode())
        h.update(b";")
    return h.hexdigest()[:16]

