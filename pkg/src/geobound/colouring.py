"""GF(2) colourings of right-angled polytopes.

A colouring assigns to every facet a vector of ``GF(2)^rank``; it is proper
when the colours at every vertex are linearly independent.  Builders for
the named families live at the bottom of the module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from . import gf2
from .gf2 import BitMatrix, unit
from .polytope import Polytope, PolytopeError, Symmetry, build_loebell, build_polygon

E1, E2, E3, E4 = unit(1), unit(2), unit(3), unit(4)
E123 = E1 ^ E2 ^ E3

MAX_RANK = 4

FAMILIES = ("am", "wiman", "kulkarni", "loebell-am", "loebell-wiman", "loebell-kulkarni")


class ColouringError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Colouring:
    """Facet colours, indexed like ``polytope.facets``."""

    polytope: Polytope
    rank: int
    colours: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.rank <= MAX_RANK:
            raise ColouringError(f"rank {self.rank} outside 1..{MAX_RANK}")
        if len(self.colours) != self.polytope.n_facets:
            raise ColouringError(
                f"{len(self.colours)} colours for {self.polytope.n_facets} facets")
        for c in self.colours:
            gf2.check_vector(c, self.rank)
        if gf2.rank(self.colours) != self.rank:
            raise ColouringError("colours do not span the colour space")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Colouring) and self.polytope == other.polytope
                and self.rank == other.rank and self.colours == other.colours)

    def __hash__(self) -> int:
        return hash((self.polytope, self.rank, self.colours))

    def __getitem__(self, facet) -> int:
        return self.colours[self.polytope.index(facet)]

    @classmethod
    def from_mapping(cls, polytope: Polytope, rank: int, mapping: dict) -> Colouring:
        try:
            colours = tuple(mapping[f] for f in polytope.facets)
        except KeyError as exc:
            raise ColouringError(f"facet {exc} is not coloured") from None
        return cls(polytope, rank, colours)

    def isotropy(self, face) -> gf2.Subspace:
        """The subgroup generated by the colours of the facets containing ``face``."""
        return gf2.span((self.colours[i] for i in face), self.rank)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "colours": {str(f): gf2.to_bits(c, self.rank)
                        for f, c in zip(self.polytope.facets, self.colours)},
        }

    @classmethod
    def from_json(cls, polytope: Polytope, data: dict | str) -> Colouring:
        if isinstance(data, str):
            data = json.loads(data)
        by_name = {str(k): v for k, v in data["colours"].items()}
        rank = data["rank"]
        colours = []
        for f in polytope.facets:
            if str(f) not in by_name:
                raise ColouringError(f"facet {f!r} is not coloured")
            bits = by_name[str(f)]
            if len(bits) != rank:
                raise ColouringError(f"colour of {f!r} has {len(bits)} bits, rank is {rank}")
            colours.append(gf2.from_bits(bits))
        return cls(polytope, rank, tuple(colours))

    def describe(self) -> str:
        return ", ".join(f"{f}:{gf2.format_vector(c, self.rank)}"
                         for f, c in zip(self.polytope.facets, self.colours))


def is_proper(lam: Colouring) -> bool:
    return all(gf2.independent([lam.colours[i] for i in v]) for v in lam.polytope.vertices)


def orientability_functional(lam: Colouring) -> int | None:
    return gf2.solve_unit_functional(sorted(set(lam.colours)), lam.rank)


def is_orientable_colouring(lam: Colouring) -> bool:
    """Whether the manifold of a proper colouring is orientable.

    Equivalent to the existence of a functional taking the value 1 on every
    colour: such a functional can be moved to the all-ones functional by a
    change of basis, after which every colour has odd weight.
    """
    if not is_proper(lam):
        raise ColouringError("orientability is only defined for proper colourings")
    return orientability_functional(lam) is not None


def induced_colouring(lam: Colouring, facet) -> Colouring:
    """The colouring a facet of a 3-polytope inherits from its neighbours.

    The facet becomes a polygon whose edge ``i`` is the ``i``-th neighbour
    in the facet's boundary cycle; colours are rewritten in a basis of the
    span ``W`` of the neighbouring colours, picked greedily in that order.
    """
    P = lam.polytope
    if P.dim != 3:
        raise PolytopeError("induced colourings need a 3-dimensional polytope")
    if not is_proper(lam):
        raise ColouringError("induced colourings need a proper colouring")
    i0 = P.index(facet)
    cycle = P.facet_cycle(i0)
    colours = [lam.colours[j] for j in cycle]
    basis: list[int] = []
    for c in colours:
        if gf2.rank(basis + [c]) > len(basis):
            basis.append(c)
    s = len(basis)
    # coordinates in the chosen basis, by enumerating the 2^s combinations
    table = {}
    for mask in range(1 << s):
        v = 0
        for k in range(s):
            if mask >> k & 1:
                v ^= basis[k]
        table[v] = mask
    polygon = build_polygon(len(cycle))
    return Colouring(polygon, s, tuple(table[c] for c in colours))


def induced_facet_order(lam: Colouring, facet) -> tuple:
    """Facet ids of the neighbours of ``facet``, as edges ``1..n`` of the induced polygon."""
    P = lam.polytope
    return tuple(P.facets[j] for j in P.facet_cycle(P.index(facet)))


def are_equivalent(l1: Colouring, l2: Colouring) -> tuple[Symmetry, BitMatrix] | None:
    """A witness ``(g, phi)`` with ``phi(l1(g(F))) == l2(F)`` for every facet.

    For each automorphism the linear map is solved from the colour pairs and
    then checked on all facets.
    """
    if l1.polytope != l2.polytope:
        raise ColouringError("colourings live on different polytopes")
    if l1.rank != l2.rank:
        return None
    for g in l1.polytope.automorphisms():
        pairs = [(l1.colours[g(i)], l2.colours[i]) for i in range(l1.polytope.n_facets)]
        phi = gf2.solve_linear_map(pairs, l1.rank, l2.rank)
        if phi is not None and phi.is_invertible():
            return g, phi
    return None


def are_equivalent_bruteforce(l1: Colouring, l2: Colouring) -> tuple[Symmetry, BitMatrix] | None:
    """Same contract as :func:`are_equivalent`, searching all of ``GL(k)``."""
    if l1.polytope != l2.polytope:
        raise ColouringError("colourings live on different polytopes")
    if l1.rank != l2.rank:
        return None
    n = l1.polytope.n_facets
    for g in l1.polytope.automorphisms():
        for phi in gf2.enumerate_gl(l1.rank):
            if all(phi(l1.colours[g(i)]) == l2.colours[i] for i in range(n)):
                return g, phi
    return None


def pushforward(lam: Colouring, p: BitMatrix) -> Colouring:
    """The colouring ``F -> p(lam(F))``; properness must be rechecked."""
    if p.ncols != lam.rank:
        raise ColouringError(f"map has domain dimension {p.ncols}, colouring rank is {lam.rank}")
    if not p.is_surjective():
        raise ColouringError("pushforward needs a surjective linear map")
    return Colouring(lam.polytope, p.nrows, tuple(p(c) for c in lam.colours))


# -- named families -------------------------------------------------------------


def polygon_cyclic(m: int, pattern: Sequence[int], rank: int) -> Colouring:
    """Colour edge ``i`` of the ``m``-gon by ``pattern[(i - 1) % len(pattern)]``."""
    if m % len(pattern):
        raise ColouringError(f"pattern of length {len(pattern)} does not fit an {m}-gon")
    return Colouring(build_polygon(m), rank, tuple(pattern[i % len(pattern)] for i in range(m)))


def check_genus(family: str, g: int) -> None:
    if family not in FAMILIES:
        raise ColouringError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(g, int) or g < 2:
        raise ColouringError(f"genus must be an integer >= 2, got {g!r}")
    if family.endswith("kulkarni") and g % 4 != 3:
        raise ColouringError(f"the Kulkarni families need g = 3 mod 4, got {g}")


def family_colouring(family: str, g: int) -> Colouring:
    """The colourings used for the three families of surfaces.

    ``am``/``wiman``: alternating ``e1, e2`` on the ``(2g+2)``-gon and the
    ``4g``-gon.  ``kulkarni``: ``e1, e2, e3, e1+e2+e3`` cyclically on the
    ``(2g+2)``-gon.  The ``loebell-*`` variants colour R(2g+2) (R(4g) for
    Wiman) so that the top face induces the matching polygon colouring.
    """
    check_genus(family, g)
    if family == "am":
        return polygon_cyclic(2 * g + 2, (E1, E2), 2)
    if family == "wiman":
        return polygon_cyclic(4 * g, (E1, E2), 2)
    if family == "kulkarni":
        return polygon_cyclic(2 * g + 2, (E1, E2, E3, E123), 3)
    if family == "loebell-am":
        return loebell_colouring(2 * g + 2)
    if family == "loebell-wiman":
        return loebell_colouring(4 * g)
    return loebell_kulkarni_colouring(2 * g + 2)


def loebell_colouring(m: int) -> Colouring:
    """Rank-3 colouring of R(m), m even.

    ``T = e1``, the ring ``t1, t2, ...`` alternates ``e2, e3``; ``B = e3``,
    the ring ``b1, b2, ...`` alternates ``e1, e1+e2+e3``.
    """
    if m % 2:
        raise ColouringError("the alternating Löbell colouring needs an even m")
    R = build_loebell(m)
    colours = {"T": E1, "B": E3}
    for i in range(1, m + 1):
        colours[f"t{i}"] = E2 if i % 2 else E3
        colours[f"b{i}"] = E1 if i % 2 else E123
    lam = Colouring.from_mapping(R, 3, colours)
    assert is_proper(lam)
    return lam


def loebell_kulkarni_colouring(m: int) -> Colouring:
    """Rank-4 colouring of R(m), m divisible by 4.

    Both m-gons get ``e4``; ``t1, t2, ...`` cycle through ``e1, e2, e3,
    e1+e2+e3`` and the bottom ring runs through the same cycle shifted by
    two pentagons (``b1 = e3``).
    """
    if m % 4:
        raise ColouringError("the cyclic Löbell colouring needs m divisible by 4")
    R = build_loebell(m)
    cyc = (E1, E2, E3, E123)
    colours = {"T": E4, "B": E4}
    for i in range(1, m + 1):
        colours[f"t{i}"] = cyc[(i - 1) % 4]
        colours[f"b{i}"] = cyc[(i + 1) % 4]
    lam = Colouring.from_mapping(R, 4, colours)
    assert is_proper(lam)
    return lam
